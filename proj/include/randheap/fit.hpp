#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace randheap {

enum class FitModel { PowerLaw, LogLinear, LogSqOverLogLog };

const char* fit_model_name(FitModel m);
std::optional<FitModel> parse_fit_model(const std::string& name);

// Least-squares fit on the model's transformed axes:
//   PowerLaw:        ln y  =  a + b ln x          (b = exponent)
//   LogLinear:          y  =  a + b log2 x        (b = coefficient)
//   LogSqOverLogLog:    y  =  a + b log2²x/log2log2x
// r2 is computed on the same transformed axes.
struct FitResult {
    FitModel model = FitModel::PowerLaw;
    double exponent_or_coeff = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::size_t points = 0;
};

// Requires at least 2 points; PowerLaw additionally requires x, y > 0.
FitResult fit_points(FitModel model, const std::vector<std::pair<double, double>>& points);

}  // namespace randheap
