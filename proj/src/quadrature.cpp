#include "nonlocal/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace nonlocal {

namespace {

// Golub-Welsch on the monic recurrence for Jacobi weight (1-x)^a (1+x)^b on [-1, 1],
// mapped to [0, 1] with u = (1 + x) / 2.
GaussRule golub_welsch(std::size_t n, double a, double b)
{
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
        const double s = 2.0 * k + a + b;
        J(k, k) = (s == 0.0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
        if (k + 1 < n) {
            const double m = static_cast<double>(k + 1);
            const double t = 2.0 * m + a + b;
            const double v = 4.0 * m * (m + a) * (m + b) * (m + a + b) / (t * t * (t + 1.0) * (t - 1.0));
            J(k, k + 1) = J(k + 1, k) = std::sqrt(v);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    const double mu0 = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                                std::lgamma(a + b + 2.0));
    const double scale = std::pow(2.0, -(a + b + 1.0));
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double v0 = es.eigenvectors()(0, static_cast<Eigen::Index>(k));
        r.nodes[k] = 0.5 * (1.0 + es.eigenvalues()(static_cast<Eigen::Index>(k)));
        r.weights[k] = mu0 * v0 * v0 * scale;
    }
    return r;
}

std::mutex rule_mutex;

const GaussRule& cached_rule(std::size_t n, double alpha)
{
    static std::map<std::pair<std::size_t, double>, GaussRule> cache;
    std::lock_guard<std::mutex> lock(rule_mutex);
    auto key = std::make_pair(n, alpha);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, golub_welsch(n, 0.0, alpha)).first;
    return it->second;
}

struct Integrator {
    double px, py, gamma;
    const QuadratureSpec& spec;
    const WeightedPointVisitor& visit;
    const GaussRule& far;
    const GaussRule& leg;
    const GaussRule& jac;

    double kernel(double x, double y) const
    {
        const double r2 = (x - px) * (x - px) + (y - py) * (y - py);
        return std::pow(r2, -0.5 * gamma);
    }

    void tensor(const Rect& r) const
    {
        const double wx = r.x1 - r.x0, wy = r.y1 - r.y0;
        for (std::size_t i = 0; i < far.nodes.size(); ++i) {
            const double x = r.x0 + wx * far.nodes[i];
            for (std::size_t j = 0; j < far.nodes.size(); ++j) {
                const double y = r.y0 + wy * far.nodes[j];
                visit(x, y, wx * wy * far.weights[i] * far.weights[j] * kernel(x, y));
            }
        }
    }

    // triangle (p, q1, q2) with the singular point at its vertex p
    void duffy(double q1x, double q1y, double q2x, double q2y) const
    {
        const double ex = q1x - px, ey = q1y - py;
        const double fx = q2x - q1x, fy = q2y - q1y;
        const double area2 = std::abs(ex * fy - ey * fx);
        for (std::size_t j = 0; j < leg.nodes.size(); ++j) {
            const double v = leg.nodes[j];
            const double dx = ex + v * fx, dy = ey + v * fy;
            const double rho = std::sqrt(dx * dx + dy * dy);
            const double wv = leg.weights[j] * area2 * std::pow(rho, -gamma);
            for (std::size_t i = 0; i < jac.nodes.size(); ++i) {
                const double u = jac.nodes[i];
                visit(px + u * dx, py + u * dy, jac.weights[i] * wv);
            }
        }
    }

    void corner(const Rect& r, int depth) const
    {
        const double wx = r.x1 - r.x0, wy = r.y1 - r.y0;
        const bool left = px == r.x0, bottom = py == r.y0;
        if (wx > 2.0 * wy) {
            const double cut = left ? r.x0 + wy : r.x1 - wy;
            run(left ? Rect{r.x0, cut, r.y0, r.y1} : Rect{cut, r.x1, r.y0, r.y1}, depth + 1);
            run(left ? Rect{cut, r.x1, r.y0, r.y1} : Rect{r.x0, cut, r.y0, r.y1}, depth + 1);
            return;
        }
        if (wy > 2.0 * wx) {
            const double cut = bottom ? r.y0 + wx : r.y1 - wx;
            run(bottom ? Rect{r.x0, r.x1, r.y0, cut} : Rect{r.x0, r.x1, cut, r.y1}, depth + 1);
            run(bottom ? Rect{r.x0, r.x1, cut, r.y1} : Rect{r.x0, r.x1, r.y0, cut}, depth + 1);
            return;
        }
        const double ox = left ? r.x1 : r.x0;
        const double oy = bottom ? r.y1 : r.y0;
        duffy(ox, py, ox, oy);
        duffy(ox, oy, px, oy);
    }

    void run(const Rect& r, int depth) const
    {
        if (depth > spec.max_depth) throw QuadratureError("quadrature refinement ceiling reached");
        const double wx = r.x1 - r.x0, wy = r.y1 - r.y0;
        const double dx = px < r.x0 ? r.x0 - px : (px > r.x1 ? px - r.x1 : 0.0);
        const double dy = py < r.y0 ? r.y0 - py : (py > r.y1 ? py - r.y1 : 0.0);
        const double dist = std::hypot(dx, dy);
        if (dist >= spec.far_ratio * std::hypot(wx, wy)) {
            tensor(r);
            return;
        }
        if (px > r.x0 && px < r.x1) {
            run({r.x0, px, r.y0, r.y1}, depth + 1);
            run({px, r.x1, r.y0, r.y1}, depth + 1);
            return;
        }
        if (py > r.y0 && py < r.y1) {
            run({r.x0, r.x1, r.y0, py}, depth + 1);
            run({r.x0, r.x1, py, r.y1}, depth + 1);
            return;
        }
        if (dist == 0.0) {
            corner(r, depth);
            return;
        }
        if (wx >= wy) {
            const double xm = 0.5 * (r.x0 + r.x1);
            run({r.x0, xm, r.y0, r.y1}, depth + 1);
            run({xm, r.x1, r.y0, r.y1}, depth + 1);
        } else {
            const double ym = 0.5 * (r.y0 + r.y1);
            run({r.x0, r.x1, r.y0, ym}, depth + 1);
            run({r.x0, r.x1, ym, r.y1}, depth + 1);
        }
    }
};

}  // namespace

const GaussRule& gauss_legendre01(std::size_t n)
{
    if (n == 0) throw std::invalid_argument("gauss rule needs at least one node");
    return cached_rule(n, 0.0);
}

const GaussRule& gauss_jacobi01(std::size_t n, double alpha)
{
    if (n == 0 || alpha <= -1.0) throw std::invalid_argument("invalid Gauss-Jacobi rule");
    return cached_rule(n, alpha);
}

void integrate_weakly_singular(const Rect& r, double px, double py, double gamma, const QuadratureSpec& spec,
                               const WeightedPointVisitor& visit)
{
    if (!(r.x1 > r.x0) || !(r.y1 > r.y0)) throw std::invalid_argument("degenerate integration rectangle");
    Integrator it{px,
                  py,
                  gamma,
                  spec,
                  visit,
                  gauss_legendre01(spec.far_order),
                  gauss_legendre01(spec.singular_order),
                  gauss_jacobi01(spec.singular_order, 1.0 - gamma)};
    it.run(r, 0);
}

}  // namespace nonlocal
