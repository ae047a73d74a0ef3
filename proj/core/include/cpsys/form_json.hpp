#pragma once

#include <string>

#include "cpsys/graded_form.hpp"

namespace cpsys {

/// {"dim": 2n, "terms": [{"idx": [i1,...,ik], "re": r, "im": s}, ...]}
std::string form_to_json(const GradedForm& f);
GradedForm form_from_json(const std::string& text);

}  // namespace cpsys
