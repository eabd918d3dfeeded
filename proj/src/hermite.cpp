#include "qes/hermite.hpp"

#include "qes/errors.hpp"
#include "qes/quadrature.hpp"

namespace qes {

HermitePatch::HermitePatch(const Jet& left, const Jet& right, int depth)
    : a_(left.base()), b_(right.base()), depth_(depth) {
    if (depth < 0 || depth > Jet::order) throw InvalidArgument("Hermite depth out of range");
    if (!(b_ > a_)) throw InvalidArgument("Hermite patch needs a < b");
    const double H = b_ - a_;
    const std::size_t m = static_cast<std::size_t>(depth) + 1;
    const std::size_t n = 2 * m;

    // Taylor coefficients rescaled to the unit variable.
    std::vector<double> cl(m), cr(m);
    double scale = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
        cl[k] = left[k] * scale;
        cr[k] = right[k] * scale;
        scale *= H;
    }

    nodes_.assign(n, 0.0);
    for (std::size_t i = m; i < n; ++i) nodes_[i] = 1.0;

    std::vector<double> q(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) q[i * n] = i < m ? cl[0] : cr[0];
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = j; i < n; ++i) {
            if (nodes_[i] == nodes_[i - j]) {
                q[i * n + j] = i < m ? cl[j] : cr[j];
            } else {
                q[i * n + j] = (q[i * n + j - 1] - q[(i - 1) * n + j - 1]) / (nodes_[i] - nodes_[i - j]);
            }
        }
    }
    newton_.resize(n);
    for (std::size_t i = 0; i < n; ++i) newton_[i] = q[i * n + i];
}

double HermitePatch::value(double x) const noexcept {
    const double u = (x - a_) / (b_ - a_);
    const std::size_t n = newton_.size();
    double acc = newton_[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) acc = acc * (u - nodes_[i]) + newton_[i];
    return acc;
}

Jet HermitePatch::jet(double x) const {
    Jet::Coeffs uc{};
    uc[0] = (x - a_) / (b_ - a_);
    uc[1] = 1.0 / (b_ - a_);
    const Jet u(x, uc);
    const std::size_t n = newton_.size();
    Jet acc = Jet::constant(x, newton_[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;) acc = acc * (u - nodes_[i]) + newton_[i];
    return acc;
}

double HermitePatch::integral(double from, double to) const {
    return quad::gauss_legendre8([this](double x) { return value(x); }, from, to);
}

}  // namespace qes
