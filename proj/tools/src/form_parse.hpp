#pragma once

#include <string>

#include "reebdbar/geometry.hpp"

namespace reebtool {

struct ParsedForm {
    reebdbar::LeafwiseForm01 form;
    bool is_zero = false;
};

/**
 * Input-form mini language: a sum of scaled catalogue forms.
 *
 *   form     := "0" | signed-term ("+" term | "-" term)*
 *   term     := [coefficient "*"] name
 *   coefficient := real literal | "(" re ("+"|"-") im "i" ")"
 *   name     := omega0 | exact_g0 | a
 *
 * Examples: "omega0", "2.5*omega0 + 1*exact_g0", "(0+1i)*a - omega0".
 * The literal "0" is the zero form.  Nonzero constants are rejected (a
 * constant is not a (0,1)-form), and so are weight-0 catalogue entries.
 * Throws std::invalid_argument with the offending fragment.
 */
ParsedForm parse_form(const std::string& text);

}  // namespace reebtool
