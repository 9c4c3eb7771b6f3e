#include "randheap/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace randheap {

const char* fit_model_name(FitModel m) {
    switch (m) {
        case FitModel::PowerLaw: return "power";
        case FitModel::LogLinear: return "loglinear";
        case FitModel::LogSqOverLogLog: return "logsq";
    }
    return "?";
}

std::optional<FitModel> parse_fit_model(const std::string& name) {
    if (name == "power") return FitModel::PowerLaw;
    if (name == "loglinear") return FitModel::LogLinear;
    if (name == "logsq") return FitModel::LogSqOverLogLog;
    return std::nullopt;
}

namespace {

double transform_x(FitModel model, double x) {
    switch (model) {
        case FitModel::PowerLaw: return std::log(x);
        case FitModel::LogLinear: return std::log2(x);
        case FitModel::LogSqOverLogLog: {
            const double l = std::log2(x);
            const double ll = std::log2(l);
            return l * l / ll;
        }
    }
    return x;
}

double transform_y(FitModel model, double y) {
    return model == FitModel::PowerLaw ? std::log(y) : y;
}

}  // namespace

FitResult fit_points(FitModel model, const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw std::invalid_argument("fit needs at least 2 points");
    const auto n = static_cast<double>(points.size());

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : points) {
        if (model == FitModel::PowerLaw && (x <= 0 || y <= 0))
            throw std::invalid_argument("power-law fit needs positive data");
        if (model == FitModel::LogSqOverLogLog && x <= 2)
            throw std::invalid_argument("logsq fit needs x > 2");
        const double tx = transform_x(model, x);
        const double ty = transform_y(model, y);
        sx += tx;
        sy += ty;
        sxx += tx * tx;
        sxy += tx * ty;
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-12) throw std::invalid_argument("degenerate x values in fit");
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;

    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / n;
    for (const auto& [x, y] : points) {
        const double tx = transform_x(model, x);
        const double ty = transform_y(model, y);
        const double err = ty - (intercept + slope * tx);
        ss_res += err * err;
        ss_tot += (ty - mean_y) * (ty - mean_y);
    }
    double r2;
    if (ss_tot < 1e-12)
        r2 = ss_res < 1e-9 ? 1.0 : 0.0;  // flat data
    else
        r2 = 1.0 - ss_res / ss_tot;

    return FitResult{model, slope, intercept, r2, points.size()};
}

}  // namespace randheap
