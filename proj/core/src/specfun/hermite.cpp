#include "wellspec/errors.hpp"
#include "wellspec/specfun.hpp"

#include <cmath>

namespace wellspec::specfun {

double hermite_h(unsigned n, double x) {
    if (!std::isfinite(x)) {
        throw DomainError("hermite_h: argument is not finite");
    }
    if (n > 2000) {
        throw DomainError("hermite_h: degree exceeds 2000");
    }
    double previous = 1.0;
    if (n == 0) {
        return previous;
    }
    double current = 2.0 * x;
    for (unsigned k = 1; k < n; ++k) {
        const double next = 2.0 * x * current - 2.0 * static_cast<double>(k) * previous;
        previous = current;
        current = next;
    }
    return current;
}

} // namespace wellspec::specfun
