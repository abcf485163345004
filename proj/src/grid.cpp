#include "nonlocal/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace nonlocal {

WeaklySingularKernel::WeaklySingularKernel(double gamma) : gamma_(gamma)
{
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("kernel exponent must lie in (0,1)");
}

double WeaklySingularKernel::operator()(double r) const
{
    return std::pow(std::abs(r), -gamma_);
}

CollocationGrid::CollocationGrid(double a, double b, std::size_t M) : a_(a), b_(b), M_(M)
{
    if (!(a < b)) throw std::invalid_argument("grid requires a < b");
    if (M < 2) throw std::invalid_argument("grid requires M >= 2");
    h_ = (b - a) / static_cast<double>(M);
}

double CollocationGrid::point(std::size_t i) const
{
    if (i == 2 * M_) return b_;
    return a_ + static_cast<double>(i) * 0.5 * h_;
}

double CollocationGrid::node(std::size_t k) const
{
    if (k + 1 < M_) return point(2 * (k + 1));
    return point(2 * (k - (M_ - 1)) + 1);
}

}  // namespace nonlocal
