#pragma once

#include <iosfwd>
#include <string>

#include "xydm/scan.hpp"

namespace xydm {

/// CSV with header J,D,gamma,r,basis,C,dC_dJ,d2C_dJ2 (plus a trailing error
/// column when any row failed). Numbers use 17 significant digits in the C
/// locale; absent derivatives are empty fields.
void write_csv(std::ostream& out, const SweepTable& table);
SweepTable read_csv(std::istream& in);

/// JSON array of row objects with the same keys; absent derivatives are null,
/// failed rows carry "error" instead of the numeric fields.
void write_json(std::ostream& out, const SweepTable& table);

/// Shortest form that reads back to the same double ("%.17g").
std::string format_exact(double v);

}  // namespace xydm
