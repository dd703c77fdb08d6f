#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "ttvfi/errors.hpp"

namespace ttvfi {

// Dense double-precision array. Rank-3 tensors are (H, W, C) row-major;
// convolution weights are rank-4 (Kh, Kw, Ci, Co) so the output-channel axis
// is contiguous in the inner loops.
class Tensor {
public:
    Tensor() = default;

    explicit Tensor(std::vector<int> dims, double fill = 0.0) : dims_(std::move(dims)) {
        std::int64_t n = 1;
        for (int d : dims_) {
            check_arg(d >= 0, "tensor dimension must be nonnegative");
            n *= d;
        }
        v_.assign(static_cast<std::size_t>(n), fill);
    }

    static Tensor map(int h, int w, int c, double fill = 0.0) {
        return Tensor({h, w, c}, fill);
    }

    bool defined() const { return !dims_.empty(); }
    int rank() const { return static_cast<int>(dims_.size()); }
    int dim(int i) const { return dims_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& dims() const { return dims_; }
    std::int64_t size() const { return static_cast<std::int64_t>(v_.size()); }

    // Rank-3 accessors.
    int height() const { return dims_[0]; }
    int width() const { return dims_[1]; }
    int channels() const { return dims_[2]; }

    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }

    double& operator[](std::int64_t i) { return v_[static_cast<std::size_t>(i)]; }
    double operator[](std::int64_t i) const { return v_[static_cast<std::size_t>(i)]; }

    double& at(int y, int x, int c) {
        return v_[static_cast<std::size_t>((static_cast<std::int64_t>(y) * dims_[1] + x) * dims_[2] + c)];
    }
    double at(int y, int x, int c) const {
        return v_[static_cast<std::size_t>((static_cast<std::int64_t>(y) * dims_[1] + x) * dims_[2] + c)];
    }

    double* row(int y) { return v_.data() + static_cast<std::size_t>(y) * dims_[1] * dims_[2]; }
    const double* row(int y) const { return v_.data() + static_cast<std::size_t>(y) * dims_[1] * dims_[2]; }

    double* px(int y, int x) {
        return v_.data() + (static_cast<std::size_t>(y) * dims_[1] + static_cast<std::size_t>(x)) * dims_[2];
    }
    const double* px(int y, int x) const {
        return v_.data() + (static_cast<std::size_t>(y) * dims_[1] + static_cast<std::size_t>(x)) * dims_[2];
    }

    void fill(double v) { std::fill(v_.begin(), v_.end(), v); }

    bool same_shape(const Tensor& o) const { return dims_ == o.dims_; }

    double min() const { return v_.empty() ? 0.0 : *std::min_element(v_.begin(), v_.end()); }
    double max() const { return v_.empty() ? 0.0 : *std::max_element(v_.begin(), v_.end()); }

    double sum() const {
        double s = 0.0;
        for (double x : v_) s += x;
        return s;
    }

    double mean() const { return v_.empty() ? 0.0 : sum() / static_cast<double>(v_.size()); }

    bool all_finite() const {
        for (double x : v_)
            if (!std::isfinite(x)) return false;
        return true;
    }

    std::string shape_str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < dims_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(dims_[i]);
        }
        return s + ")";
    }

private:
    std::vector<int> dims_;
    std::vector<double> v_;
};

inline double max_abs_diff(const Tensor& a, const Tensor& b) {
    check_arg(a.same_shape(b), "max_abs_diff: shape mismatch " + a.shape_str() + " vs " + b.shape_str());
    double m = 0.0;
    for (std::int64_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace ttvfi
