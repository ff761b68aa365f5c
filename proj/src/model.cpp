#include "xydm/model.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "xydm/errors.hpp"

namespace xydm {

void ModelParams::validate() const {
    if (!std::isfinite(J) || !std::isfinite(gamma) || !std::isfinite(D)) {
        throw ValidationError("model parameters must be finite");
    }
    if (gamma < -1.0 || gamma > 1.0) {
        throw ValidationError("gamma must lie in [-1, 1], got " + std::to_string(gamma));
    }
}

std::string_view to_string(Basis b) {
    switch (b) {
        case Basis::X: return "x";
        case Basis::Y: return "y";
        case Basis::Z: return "z";
    }
    return "?";
}

Basis parse_basis(std::string_view s) {
    if (s.size() == 1) {
        switch (std::tolower(static_cast<unsigned char>(s[0]))) {
            case 'x': return Basis::X;
            case 'y': return Basis::Y;
            case 'z': return Basis::Z;
            default: break;
        }
    }
    throw ValidationError("unknown basis '" + std::string(s) + "' (expected x, y or z)");
}

}  // namespace xydm
