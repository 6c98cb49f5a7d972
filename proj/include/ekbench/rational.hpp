#pragma once

#include <gmpxx.h>

#include <string>

namespace ekbench {

// Exact rational scalar used throughout the interval layer.
using Rat = mpq_class;

// Parses "p/q" or a bare integer "p"; also accepts a decimal like "0.25"
// (converted exactly).  Throws Error(bad_input) on malformed text.
Rat parse_rat(const std::string& text);

// Canonical text form "p/q" (or "p" when the denominator is 1).
std::string rat_str(const Rat& x);

// floor(x) as an exact integer rational.
Rat rat_floor(const Rat& x);

double rat_double(const Rat& x);

}  // namespace ekbench
