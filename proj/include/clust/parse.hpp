#pragma once

#include <string>
#include <string_view>

#include "clust/algebra.hpp"
#include "clust/seed.hpp"

namespace clust {

// Laurent expression over the declared variables and integer literals:
//   expr   := ["+"|"-"] term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := atom ["^" signed-int]
//   atom   := name | integer | "(" expr ")"
// Division must be exact and the divisor a single term; a sum in the
// denominator is reported back with a request to clear denominators.
// Inverse of to_string on canonical forms.
LaurentPoly parse_element(std::string_view src, const VarTable& vars);

struct SeedFile {
    std::string name;
    Seed seed;
};

// JSON document {"name": ..., "mutable": [names], "frozen": [names],
// "B": n rows of n integers, "coeff_exponents": m rows of n integers}.
// Row i of coeff_exponents gives the exponent of the i-th frozen variable
// in each y_j; the field may be omitted when every coefficient is trivial.
SeedFile parse_seed_json(const std::string& text);
SeedFile load_seed_file(const std::string& path);

}  // namespace clust
