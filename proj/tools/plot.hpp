#pragma once

#include "absconic/mpoly.hpp"

#include <string>

namespace absconic::tools {

struct Window {
    double x0 = -2, x1 = 2, y0 = -2, y1 = 2;
};

struct Plot {
    std::string svg;
    std::size_t segments = 0;
};

/// Real zero set of f(x, y, 1) in the window by marching squares on a
/// resolution x resolution grid. Throws DomainError for non-real f.
Plot plot_curve(const MPoly& f, const Window& w, int resolution);

}  // namespace absconic::tools
