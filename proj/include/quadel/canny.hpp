#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace quadel {

/// Row-major scalar grid; images use the range [0, 255].
struct Grid {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    Grid() = default;
    Grid(int w, int h, double fill = 0.0)
        : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}

    double& at(int u, int v) { return data[static_cast<size_t>(v) * width + u]; }
    double at(int u, int v) const { return data[static_cast<size_t>(v) * width + u]; }
    bool inside(int u, int v) const { return u >= 0 && u < width && v >= 0 && v < height; }
};

using GrayImage = Grid;

struct GradientField {
    Grid magnitude;
    Grid direction;  // atan2(gv, gu), in (-pi, pi]
};

struct ImageTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// (2r+1)^2 samples of exp(-(u^2+v^2)/(2 sigma^2)), normalized to sum 1.
Grid gaussian_kernel(double sigma, int radius);

/// Gaussian blur with replicate borders; kernel radius ceil(3 sigma).
GrayImage smooth(const GrayImage& img, double sigma);

/// Sobel gradients; needs at least a 3x3 image.
GradientField gradients(const GrayImage& img);

/// Plain magnitude threshold: M where M > T, else 0 (strict).
Grid threshold(const GradientField& field, double t);

/// Keeps gradient-direction local maxima (4 direction bins, ties kept).
Grid non_max_suppression(const GradientField& field);

/// Double threshold with 8-connected weak-edge promotion; output is
/// strictly binary {0, 255}.
Grid hysteresis(const Grid& thinned, double t_low, double t_high);

/// smooth -> gradients -> non_max_suppression -> hysteresis.
Grid canny(const GrayImage& img, double sigma, double t_low, double t_high);

/// Default double-threshold pair: t_high = 0.2 * max magnitude of the
/// thinned grid, t_low = 0.5 * t_high.
std::pair<double, double> default_thresholds(const Grid& thinned);

/// Linear rescale to [0, 255] for stage dumps (all zeros stay zero).
GrayImage rescale_for_dump(const Grid& grid);

}  // namespace quadel
