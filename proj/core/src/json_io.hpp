#pragma once

#include <string>

#include "mapeval/report.hpp"

namespace mapeval::detail {

std::string summary_to_json(const EvaluationSummary& summary);

}  // namespace mapeval::detail
