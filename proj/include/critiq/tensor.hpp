#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "critiq/errors.hpp"

namespace critiq {

using Shape = std::vector<int64_t>;

int64_t shape_numel(const Shape& s);
std::string shape_str(const Shape& s);

// Dense row-major array of doubles. This is the storage type underneath the
// autodiff graph; it carries no graph state of its own.
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(Shape shape)
        : shape_(std::move(shape)), data_(static_cast<size_t>(shape_numel(shape_)), 0.0) {}
    Tensor(Shape shape, std::vector<double> data);

    static Tensor zeros(Shape shape) { return Tensor(std::move(shape)); }
    static Tensor full(Shape shape, double v);
    static Tensor ones(Shape shape) { return full(std::move(shape), 1.0); }
    static Tensor scalar(double v) { return Tensor({}, {v}); }

    const Shape& shape() const { return shape_; }
    int64_t numel() const { return static_cast<int64_t>(data_.size()); }
    int64_t dim(size_t i) const { return shape_[i]; }
    size_t rank() const { return shape_.size(); }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    double& operator[](int64_t i) { return data_[static_cast<size_t>(i)]; }
    double operator[](int64_t i) const { return data_[static_cast<size_t>(i)]; }

    // Value of a rank-0 tensor.
    double item() const;

    bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }

private:
    Shape shape_;
    std::vector<double> data_;
};

namespace tops {

// Elementwise binary kernels with trailing-suffix broadcasting: shapes must
// be equal, or one operand's shape must equal a trailing suffix of the
// other's (a scalar broadcasts against anything). Throws ShapeError naming
// both shapes otherwise.
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor div(const Tensor& a, const Tensor& b);
Tensor minimum(const Tensor& a, const Tensor& b);
Tensor maximum(const Tensor& a, const Tensor& b);

Tensor add_scalar(const Tensor& a, double c);
Tensor mul_scalar(const Tensor& a, double c);
Tensor pow_scalar(const Tensor& a, double c);

Tensor relu(const Tensor& a);
Tensor abs(const Tensor& a);
Tensor exp(const Tensor& a);
Tensor log(const Tensor& a);
Tensor sigmoid(const Tensor& a);
Tensor tanh(const Tensor& a);

// [m,k] x [k,n] -> [m,n]
Tensor matmul(const Tensor& a, const Tensor& b);
// [B,m,k] x [B,k,n] -> [B,m,n]
Tensor bmm(const Tensor& a, const Tensor& b);

Tensor sum_all(const Tensor& a);                           // -> rank 0
Tensor sum_axis(const Tensor& a, int axis, bool keepdims);
Tensor max_axis(const Tensor& a, int axis, bool keepdims);
// Indices (flattened per output element) of the first maximum along axis.
std::vector<int64_t> argmax_axis(const Tensor& a, int axis);

// Reduce a to `target` by summing over broadcast (leading) dimensions;
// inverse of broadcast_to. target must be broadcast-compatible with a.
Tensor sum_to(const Tensor& a, const Shape& target);
Tensor broadcast_to(const Tensor& a, const Shape& target);

Tensor reshape(const Tensor& a, const Shape& shape);
Tensor transpose(const Tensor& a, const std::vector<int>& perm);
Tensor concat(const std::vector<const Tensor*>& parts, int axis);
Tensor slice(const Tensor& a, int axis, int64_t start, int64_t len);
Tensor take_rows(const Tensor& a, const std::vector<int64_t>& rows);

int normalize_axis(int axis, size_t rank);

} // namespace tops

} // namespace critiq
