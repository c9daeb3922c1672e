#include "plot.hpp"

#include "absconic/error.hpp"

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string_view>
#include <vector>

namespace absconic::tools {

namespace {

struct Term {
    long double c;
    int ex, ey;
};

// Coefficients scaled by the largest one so degree-8 pictures with huge
// integers stay in range.
std::vector<Term> affine_terms(const MPoly& f)
{
    if (!f.is_real()) throw DomainError("plot: coefficients must be real");
    if (f.nvars() < 2 || f.nvars() > 3) throw DomainError("plot: expected a form in x, y, z");
    double scale = 0;
    for (const auto& [m, c] : f.terms()) scale = std::max(scale, std::abs(c.re().get_d()));
    std::vector<Term> out;
    for (const auto& [m, c] : f.terms()) {
        const Rat r = c.re() / Rat(scale);
        out.push_back({static_cast<long double>(r.get_d()), m.e[0], m.e[1]});
    }
    return out;
}

long double eval(const std::vector<Term>& ts, long double x, long double y)
{
    long double s = 0;
    for (const auto& t : ts) s += t.c * std::pow(x, t.ex) * std::pow(y, t.ey);
    return s;
}

}  // namespace

Plot plot_curve(const MPoly& f, const Window& w, int resolution)
{
    if (resolution < 2 || resolution > 4000) throw DomainError("plot: resolution must be in [2, 4000]");
    if (!(w.x0 < w.x1 && w.y0 < w.y1) || !std::isfinite(w.x0) || !std::isfinite(w.x1) || !std::isfinite(w.y0) ||
        !std::isfinite(w.y1)) {
        throw DomainError("plot: window bounds must be finite with x0 < x1 and y0 < y1");
    }
    const auto ts = affine_terms(f);
    const int n = resolution;
    const long double dx = (w.x1 - w.x0) / n, dy = (w.y1 - w.y0) / n;
    std::vector<long double> v((n + 1) * (n + 1));
    auto at = [&](int i, int j) -> long double& { return v[j * (n + 1) + i]; };
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) at(i, j) = eval(ts, w.x0 + i * dx, w.y0 + j * dy);
    }

    const double size = 600;
    auto px = [&](long double x) { return static_cast<double>((x - w.x0) / (w.x1 - w.x0) * size); };
    auto py = [&](long double y) { return static_cast<double>((w.y1 - y) / (w.y1 - w.y0) * size); };

    std::ostringstream path;
    std::size_t segments = 0;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            // Corners counterclockwise from the lower left; edge k joins corner k and k+1.
            const std::array<long double, 4> c{at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)};
            const std::array<long double, 4> cx{w.x0 + i * dx, w.x0 + (i + 1) * dx, w.x0 + (i + 1) * dx, w.x0 + i * dx};
            const std::array<long double, 4> cy{w.y0 + j * dy, w.y0 + j * dy, w.y0 + (j + 1) * dy, w.y0 + (j + 1) * dy};
            std::vector<std::pair<long double, long double>> cross;
            for (int k = 0; k < 4; ++k) {
                const int l = (k + 1) % 4;
                if ((c[k] >= 0) == (c[l] >= 0)) continue;
                const long double t = c[k] / (c[k] - c[l]);
                cross.emplace_back(cx[k] + t * (cx[l] - cx[k]), cy[k] + t * (cy[l] - cy[k]));
            }
            if (cross.size() == 4) {
                // Saddle: pair the crossings according to the sign at the centre.
                const long double mid = (c[0] + c[1] + c[2] + c[3]) / 4;
                if ((mid >= 0) != (c[0] >= 0)) std::swap(cross[1], cross[3]);
            }
            for (std::size_t k = 0; k + 1 < cross.size(); k += 2) {
                char from[48], to[48];
                std::snprintf(from, sizeof from, "%.3f %.3f", px(cross[k].first), py(cross[k].second));
                std::snprintf(to, sizeof to, "%.3f %.3f", px(cross[k + 1].first), py(cross[k + 1].second));
                if (std::string_view(from) == to) continue;
                path << 'M' << from << 'L' << to;
                ++segments;
            }
        }
    }

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
    svg << "<rect width=\"600\" height=\"600\" fill=\"white\"/>\n";
    if (segments > 0) {
        svg << "<path fill=\"none\" stroke=\"black\" stroke-width=\"1.2\" d=\"" << path.str() << "\"/>\n";
    }
    svg << "</svg>\n";
    return {svg.str(), segments};
}

}  // namespace absconic::tools
