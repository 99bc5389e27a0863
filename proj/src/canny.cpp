#include "quadel/canny.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace quadel {

Grid gaussian_kernel(double sigma, int radius) {
    if (!(sigma > 0.0) || radius < 0)
        throw std::invalid_argument("gaussian kernel needs sigma > 0, radius >= 0");
    int size = 2 * radius + 1;
    Grid k(size, size);
    double sum = 0.0;
    for (int v = -radius; v <= radius; ++v)
        for (int u = -radius; u <= radius; ++u) {
            double w = std::exp(-(u * u + v * v) / (2.0 * sigma * sigma));
            k.at(u + radius, v + radius) = w;
            sum += w;
        }
    for (double& w : k.data) w /= sum;
    return k;
}

namespace {

double sample_replicate(const GrayImage& img, int u, int v) {
    u = std::clamp(u, 0, img.width - 1);
    v = std::clamp(v, 0, img.height - 1);
    return img.at(u, v);
}

}  // namespace

GrayImage smooth(const GrayImage& img, double sigma) {
    int radius = static_cast<int>(std::ceil(3.0 * sigma));
    Grid kernel = gaussian_kernel(sigma, radius);
    GrayImage out(img.width, img.height);
    for (int v = 0; v < img.height; ++v)
        for (int u = 0; u < img.width; ++u) {
            double acc = 0.0;
            for (int dv = -radius; dv <= radius; ++dv)
                for (int du = -radius; du <= radius; ++du)
                    acc += kernel.at(du + radius, dv + radius) *
                           sample_replicate(img, u + du, v + dv);
            out.at(u, v) = acc;
        }
    return out;
}

GradientField gradients(const GrayImage& img) {
    if (img.width < 3 || img.height < 3)
        throw ImageTooSmall("gradients need at least a 3x3 image");
    GradientField field;
    field.magnitude = Grid(img.width, img.height);
    field.direction = Grid(img.width, img.height);
    for (int v = 0; v < img.height; ++v)
        for (int u = 0; u < img.width; ++u) {
            auto s = [&](int du, int dv) { return sample_replicate(img, u + du, v + dv); };
            double gu = (s(1, -1) + 2.0 * s(1, 0) + s(1, 1)) -
                        (s(-1, -1) + 2.0 * s(-1, 0) + s(-1, 1));
            double gv = (s(-1, 1) + 2.0 * s(0, 1) + s(1, 1)) -
                        (s(-1, -1) + 2.0 * s(0, -1) + s(1, -1));
            field.magnitude.at(u, v) = std::sqrt(gu * gu + gv * gv);
            field.direction.at(u, v) = std::atan2(gv, gu);
        }
    return field;
}

Grid threshold(const GradientField& field, double t) {
    if (t < 0.0) throw std::invalid_argument("threshold must be non-negative");
    Grid out(field.magnitude.width, field.magnitude.height);
    for (size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = field.magnitude.data[i] > t ? field.magnitude.data[i] : 0.0;
    return out;
}

Grid non_max_suppression(const GradientField& field) {
    const Grid& m = field.magnitude;
    Grid out(m.width, m.height);
    for (int v = 0; v < m.height; ++v)
        for (int u = 0; u < m.width; ++u) {
            double mag = m.at(u, v);
            if (mag == 0.0) continue;
            // Quantize the direction to 0/45/90/135 degrees (mod 180).
            double a = field.direction.at(u, v);
            if (a < 0) a += M_PI;
            if (a >= M_PI) a -= M_PI;
            int bin = static_cast<int>(std::floor((a + M_PI / 8.0) / (M_PI / 4.0))) % 4;
            static constexpr int off[4][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}};
            int du = off[bin][0], dv = off[bin][1];
            double n1 = m.inside(u + du, v + dv) ? m.at(u + du, v + dv) : 0.0;
            double n2 = m.inside(u - du, v - dv) ? m.at(u - du, v - dv) : 0.0;
            if (mag >= n1 && mag >= n2) out.at(u, v) = mag;
        }
    return out;
}

Grid hysteresis(const Grid& thinned, double t_low, double t_high) {
    if (!(t_low >= 0.0) || t_low > t_high)
        throw std::invalid_argument("need 0 <= t_low <= t_high");
    Grid out(thinned.width, thinned.height);
    std::vector<char> visited(thinned.data.size(), 0);
    std::deque<std::pair<int, int>> queue;
    for (int v = 0; v < thinned.height; ++v)
        for (int u = 0; u < thinned.width; ++u)
            if (thinned.at(u, v) >= t_high) {
                visited[static_cast<size_t>(v) * thinned.width + u] = 1;
                queue.emplace_back(u, v);
            }
    while (!queue.empty()) {
        auto [u, v] = queue.front();
        queue.pop_front();
        out.at(u, v) = 255.0;
        for (int dv = -1; dv <= 1; ++dv)
            for (int du = -1; du <= 1; ++du) {
                if (du == 0 && dv == 0) continue;
                int nu = u + du, nv = v + dv;
                if (!thinned.inside(nu, nv)) continue;
                size_t idx = static_cast<size_t>(nv) * thinned.width + nu;
                if (visited[idx]) continue;
                if (thinned.at(nu, nv) >= t_low) {
                    visited[idx] = 1;
                    queue.emplace_back(nu, nv);
                }
            }
    }
    return out;
}

Grid canny(const GrayImage& img, double sigma, double t_low, double t_high) {
    GradientField field = gradients(smooth(img, sigma));
    return hysteresis(non_max_suppression(field), t_low, t_high);
}

std::pair<double, double> default_thresholds(const Grid& thinned) {
    double mx = 0.0;
    for (double v : thinned.data) mx = std::max(mx, v);
    double t_high = 0.2 * mx;
    return {0.5 * t_high, t_high};
}

GrayImage rescale_for_dump(const Grid& grid) {
    double mx = 0.0;
    for (double v : grid.data) mx = std::max(mx, v);
    GrayImage out(grid.width, grid.height);
    if (mx <= 0.0) return out;
    for (size_t i = 0; i < grid.data.size(); ++i)
        out.data[i] = std::round(255.0 * grid.data[i] / mx);
    return out;
}

}  // namespace quadel
