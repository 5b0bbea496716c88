#include "hhlab/mechanisms.hpp"

namespace hhlab {

std::string to_string(MechanismKind kind) {
    switch (kind) {
        case MechanismKind::simple_random: return "simple-random";
        case MechanismKind::permutation: return "permutation";
        case MechanismKind::greedy: return "greedy";
        case MechanismKind::random_gradient: return "random-gradient";
        case MechanismKind::generalised_random_gradient: return "grg";
    }
    return "?";
}

}  // namespace hhlab
