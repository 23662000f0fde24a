#include "tensvd/metrics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace tensvd {

namespace {

double squared_difference(const DenseTensor& x, const DenseTensor& xhat) {
    if (x.dims() != xhat.dims())
        throw ShapeError("metric inputs must have identical shapes");
    return (Eigen::Map<const Eigen::VectorXd>(x.data(), x.size()) -
            Eigen::Map<const Eigen::VectorXd>(xhat.data(), xhat.size()))
        .squaredNorm();
}

} // namespace

double mse(const DenseTensor& x, const DenseTensor& xhat) {
    return squared_difference(x, xhat) / static_cast<double>(x.size());
}

double relative_error(const DenseTensor& x, const DenseTensor& xhat) {
    const double ref = frobenius_norm(x);
    if (ref == 0.0) throw Error("relative error is undefined for a zero reference tensor");
    return std::sqrt(squared_difference(x, xhat)) / ref;
}

double psnr_from(double peak, double mse_value, bool as_printed) {
    if (mse_value < 0.0) throw Error("MSE must be nonnegative");
    if (mse_value == 0.0) return std::numeric_limits<double>::infinity();
    const double denom = as_printed ? std::sqrt(mse_value) : mse_value;
    return 10.0 * std::log10(peak * peak / denom);
}

double psnr(const DenseTensor& x, const DenseTensor& xhat, bool as_printed) {
    const double peak =
        std::max(Eigen::Map<const Eigen::VectorXd>(x.data(), x.size()).maxCoeff(),
                 Eigen::Map<const Eigen::VectorXd>(xhat.data(), xhat.size()).maxCoeff());
    return psnr_from(peak, mse(x, xhat), as_printed);
}

std::pair<double, double> compression_ratio(std::int64_t stored_count,
                                            std::int64_t original_count) {
    if (stored_count <= 0 || original_count <= 0)
        throw Error("compression ratio requires positive element counts");
    const double fraction = static_cast<double>(stored_count) / static_cast<double>(original_count);
    return {fraction, 1.0 - fraction};
}

std::string QualityReport::to_text() const {
    std::ostringstream out;
    out.precision(12);
    out << "mse=" << mse << "\n"
        << "err=" << err << "\n"
        << "psnr_db=" << psnr_db << "\n"
        << "cr_stored_fraction=" << cr_stored_fraction << "\n"
        << "cr_space_savings=" << cr_space_savings << "\n"
        << "elapsed_seconds=" << elapsed_seconds << "\n";
    return out.str();
}

std::string QualityReport::to_json() const {
    nlohmann::json j{{"mse", mse},
                     {"err", err},
                     {"psnr_db", psnr_db},
                     {"cr_stored_fraction", cr_stored_fraction},
                     {"cr_space_savings", cr_space_savings},
                     {"elapsed_seconds", elapsed_seconds}};
    return j.dump(2);
}

} // namespace tensvd
