#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qwalk {

enum class Method { QA, DK, RWR, DIA, NBR };

std::string_view method_name(Method method);
std::optional<Method> parse_method(std::string_view name);

// Per-node scores from one method run. params records the resolved
// hyperparameters for export metadata.
struct ScoreVector {
    Method method = Method::QA;
    std::vector<double> scores;
    std::vector<std::pair<std::string, double>> params;
};

} // namespace qwalk
