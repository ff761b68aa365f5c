#pragma once

#include <string>
#include <string_view>

namespace xydm {

/// Couplings of the XY chain with z-axis Dzyaloshinsky-Moriya exchange.
/// The transverse field has unit strength.
struct ModelParams {
    double J = 0.0;      ///< spin-spin exchange
    double gamma = 0.0;  ///< anisotropy, -1 <= gamma <= 1
    double D = 0.0;      ///< DM coupling

    /// Throws ValidationError if gamma is outside [-1, 1] or any value is not finite.
    void validate() const;
};

/// Measurement axis that defines the incoherent (diagonal) basis.
enum class Basis { X, Y, Z };

std::string_view to_string(Basis b);
/// Accepts "x"/"y"/"z" in either case.
Basis parse_basis(std::string_view s);

}  // namespace xydm
