#include "critiq/tensor.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

namespace critiq {

int64_t shape_numel(const Shape& s) {
    int64_t n = 1;
    for (int64_t d : s) n *= d;
    return n;
}

std::string shape_str(const Shape& s) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << "]";
    return os.str();
}

Tensor::Tensor(Shape shape, std::vector<double> data) : shape_(std::move(shape)), data_(std::move(data)) {
    if (shape_numel(shape_) != static_cast<int64_t>(data_.size()))
        throw ShapeError("tensor init: shape " + shape_str(shape_) + " does not hold " +
                         std::to_string(data_.size()) + " elements");
}

Tensor Tensor::full(Shape shape, double v) {
    Tensor t(std::move(shape));
    for (int64_t i = 0; i < t.numel(); ++i) t[i] = v;
    return t;
}

double Tensor::item() const {
    if (numel() != 1) throw ShapeError("item() on tensor of shape " + shape_str(shape_));
    return data_[0];
}

namespace tops {

int normalize_axis(int axis, size_t rank) {
    int r = static_cast<int>(rank);
    int a = axis < 0 ? axis + r : axis;
    if (a < 0 || a >= r)
        throw ShapeError("axis " + std::to_string(axis) + " out of range for rank " + std::to_string(r));
    return a;
}

namespace {

bool is_suffix(const Shape& small, const Shape& big) {
    if (small.size() > big.size()) return false;
    size_t off = big.size() - small.size();
    for (size_t i = 0; i < small.size(); ++i)
        if (small[i] != big[off + i]) return false;
    return true;
}

template <typename F>
Tensor binary(const Tensor& a, const Tensor& b, F f, const char* name) {
    if (a.same_shape(b)) {
        Tensor out(a.shape());
        const double* pa = a.data();
        const double* pb = b.data();
        double* po = out.data();
        for (int64_t i = 0; i < a.numel(); ++i) po[i] = f(pa[i], pb[i]);
        return out;
    }
    if (is_suffix(b.shape(), a.shape())) {
        Tensor out(a.shape());
        const int64_t nb = b.numel() > 0 ? b.numel() : 1;
        const double* pa = a.data();
        const double* pb = b.data();
        double* po = out.data();
        for (int64_t i = 0; i < a.numel(); ++i) po[i] = f(pa[i], pb[i % nb]);
        return out;
    }
    if (is_suffix(a.shape(), b.shape())) {
        Tensor out(b.shape());
        const int64_t na = a.numel() > 0 ? a.numel() : 1;
        const double* pa = a.data();
        const double* pb = b.data();
        double* po = out.data();
        for (int64_t i = 0; i < b.numel(); ++i) po[i] = f(pa[i % na], pb[i]);
        return out;
    }
    throw ShapeError(std::string(name) + ": incompatible shapes " + shape_str(a.shape()) + " and " +
                     shape_str(b.shape()));
}

template <typename F>
Tensor unary(const Tensor& a, F f) {
    Tensor out(a.shape());
    const double* pa = a.data();
    double* po = out.data();
    for (int64_t i = 0; i < a.numel(); ++i) po[i] = f(pa[i]);
    return out;
}

} // namespace

Tensor add(const Tensor& a, const Tensor& b) { return binary(a, b, [](double x, double y) { return x + y; }, "add"); }
Tensor sub(const Tensor& a, const Tensor& b) { return binary(a, b, [](double x, double y) { return x - y; }, "sub"); }
Tensor mul(const Tensor& a, const Tensor& b) { return binary(a, b, [](double x, double y) { return x * y; }, "mul"); }
Tensor div(const Tensor& a, const Tensor& b) { return binary(a, b, [](double x, double y) { return x / y; }, "div"); }
Tensor minimum(const Tensor& a, const Tensor& b) {
    return binary(a, b, [](double x, double y) { return x < y ? x : y; }, "minimum");
}
Tensor maximum(const Tensor& a, const Tensor& b) {
    return binary(a, b, [](double x, double y) { return x > y ? x : y; }, "maximum");
}

Tensor add_scalar(const Tensor& a, double c) { return unary(a, [c](double x) { return x + c; }); }
Tensor mul_scalar(const Tensor& a, double c) { return unary(a, [c](double x) { return x * c; }); }
Tensor pow_scalar(const Tensor& a, double c) { return unary(a, [c](double x) { return std::pow(x, c); }); }

Tensor relu(const Tensor& a) { return unary(a, [](double x) { return x > 0.0 ? x : 0.0; }); }
Tensor abs(const Tensor& a) { return unary(a, [](double x) { return std::fabs(x); }); }
Tensor exp(const Tensor& a) { return unary(a, [](double x) { return std::exp(x); }); }
Tensor log(const Tensor& a) { return unary(a, [](double x) { return std::log(x); }); }
Tensor sigmoid(const Tensor& a) {
    return unary(a, [](double x) { return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x)); });
}
Tensor tanh(const Tensor& a) { return unary(a, [](double x) { return std::tanh(x); }); }

Tensor matmul(const Tensor& a, const Tensor& b) {
    if (a.rank() != 2 || b.rank() != 2 || a.dim(1) != b.dim(0))
        throw ShapeError("matmul: incompatible shapes " + shape_str(a.shape()) + " and " + shape_str(b.shape()));
    const int64_t m = a.dim(0), kk = a.dim(1), n = b.dim(1);
    Tensor out({m, n});
    const double* pa = a.data();
    const double* pb = b.data();
    double* po = out.data();
    for (int64_t i = 0; i < m; ++i) {
        double* orow = po + i * n;
        for (int64_t k = 0; k < kk; ++k) {
            const double aik = pa[i * kk + k];
            const double* brow = pb + k * n;
            for (int64_t j = 0; j < n; ++j) orow[j] += aik * brow[j];
        }
    }
    return out;
}

Tensor bmm(const Tensor& a, const Tensor& b) {
    if (a.rank() != 3 || b.rank() != 3 || a.dim(0) != b.dim(0) || a.dim(2) != b.dim(1))
        throw ShapeError("bmm: incompatible shapes " + shape_str(a.shape()) + " and " + shape_str(b.shape()));
    const int64_t bs = a.dim(0), m = a.dim(1), kk = a.dim(2), n = b.dim(2);
    Tensor out({bs, m, n});
    for (int64_t bi = 0; bi < bs; ++bi) {
        const double* pa = a.data() + bi * m * kk;
        const double* pb = b.data() + bi * kk * n;
        double* po = out.data() + bi * m * n;
        for (int64_t i = 0; i < m; ++i) {
            double* orow = po + i * n;
            for (int64_t k = 0; k < kk; ++k) {
                const double aik = pa[i * kk + k];
                const double* brow = pb + k * n;
                for (int64_t j = 0; j < n; ++j) orow[j] += aik * brow[j];
            }
        }
    }
    return out;
}

Tensor sum_all(const Tensor& a) {
    double acc = 0.0;
    for (int64_t i = 0; i < a.numel(); ++i) acc += a[i];
    return Tensor::scalar(acc);
}

namespace {

// Decompose shape around `axis` into outer x axis x inner extents.
void split_axis(const Shape& s, int axis, int64_t& outer, int64_t& len, int64_t& inner) {
    outer = 1;
    inner = 1;
    for (int i = 0; i < axis; ++i) outer *= s[static_cast<size_t>(i)];
    len = s[static_cast<size_t>(axis)];
    for (size_t i = static_cast<size_t>(axis) + 1; i < s.size(); ++i) inner *= s[i];
}

Shape reduced_shape(const Shape& s, int axis, bool keepdims) {
    Shape out;
    for (size_t i = 0; i < s.size(); ++i) {
        if (static_cast<int>(i) == axis) {
            if (keepdims) out.push_back(1);
        } else {
            out.push_back(s[i]);
        }
    }
    return out;
}

} // namespace

Tensor sum_axis(const Tensor& a, int axis, bool keepdims) {
    axis = normalize_axis(axis, a.rank());
    int64_t outer, len, inner;
    split_axis(a.shape(), axis, outer, len, inner);
    Tensor out(reduced_shape(a.shape(), axis, keepdims));
    const double* pa = a.data();
    double* po = out.data();
    for (int64_t o = 0; o < outer; ++o)
        for (int64_t l = 0; l < len; ++l) {
            const double* src = pa + (o * len + l) * inner;
            double* dst = po + o * inner;
            for (int64_t i = 0; i < inner; ++i) dst[i] += src[i];
        }
    return out;
}

Tensor max_axis(const Tensor& a, int axis, bool keepdims) {
    axis = normalize_axis(axis, a.rank());
    int64_t outer, len, inner;
    split_axis(a.shape(), axis, outer, len, inner);
    if (len == 0) throw ShapeError("max_axis over empty axis");
    Tensor out(reduced_shape(a.shape(), axis, keepdims));
    const double* pa = a.data();
    double* po = out.data();
    for (int64_t o = 0; o < outer; ++o)
        for (int64_t i = 0; i < inner; ++i) {
            double best = pa[(o * len) * inner + i];
            for (int64_t l = 1; l < len; ++l) {
                double v = pa[(o * len + l) * inner + i];
                if (v > best) best = v;
            }
            po[o * inner + i] = best;
        }
    return out;
}

std::vector<int64_t> argmax_axis(const Tensor& a, int axis) {
    axis = normalize_axis(axis, a.rank());
    int64_t outer, len, inner;
    split_axis(a.shape(), axis, outer, len, inner);
    if (len == 0) throw ShapeError("argmax_axis over empty axis");
    std::vector<int64_t> out(static_cast<size_t>(outer * inner));
    const double* pa = a.data();
    for (int64_t o = 0; o < outer; ++o)
        for (int64_t i = 0; i < inner; ++i) {
            int64_t arg = 0;
            double best = pa[(o * len) * inner + i];
            for (int64_t l = 1; l < len; ++l) {
                double v = pa[(o * len + l) * inner + i];
                if (v > best) {
                    best = v;
                    arg = l;
                }
            }
            out[static_cast<size_t>(o * inner + i)] = arg;
        }
    return out;
}

Tensor sum_to(const Tensor& a, const Shape& target) {
    if (a.shape() == target) return a;
    if (!is_suffix(target, a.shape()))
        throw ShapeError("sum_to: " + shape_str(target) + " is not a suffix of " + shape_str(a.shape()));
    Tensor out(target);
    const int64_t n = out.numel() > 0 ? out.numel() : 1;
    const double* pa = a.data();
    double* po = out.data();
    for (int64_t i = 0; i < a.numel(); ++i) po[i % n] += pa[i];
    return out;
}

Tensor broadcast_to(const Tensor& a, const Shape& target) {
    if (a.shape() == target) return a;
    if (!is_suffix(a.shape(), target))
        throw ShapeError("broadcast_to: " + shape_str(a.shape()) + " is not a suffix of " + shape_str(target));
    Tensor out(target);
    const int64_t n = a.numel() > 0 ? a.numel() : 1;
    const double* pa = a.data();
    double* po = out.data();
    for (int64_t i = 0; i < out.numel(); ++i) po[i] = pa[i % n];
    return out;
}

Tensor reshape(const Tensor& a, const Shape& shape) {
    if (shape_numel(shape) != a.numel())
        throw ShapeError("reshape: " + shape_str(a.shape()) + " -> " + shape_str(shape) + " changes element count");
    Tensor out(shape);
    std::memcpy(out.data(), a.data(), static_cast<size_t>(a.numel()) * sizeof(double));
    return out;
}

Tensor transpose(const Tensor& a, const std::vector<int>& perm) {
    if (perm.size() != a.rank()) throw ShapeError("transpose: perm rank mismatch for " + shape_str(a.shape()));
    const size_t r = a.rank();
    std::vector<int64_t> in_strides(r, 1);
    for (size_t i = r; i-- > 1;) in_strides[i - 1] = in_strides[i] * a.dim(i);
    Shape out_shape(r);
    std::vector<int64_t> map_strides(r);
    std::vector<bool> seen(r, false);
    for (size_t i = 0; i < r; ++i) {
        int p = perm[i];
        if (p < 0 || static_cast<size_t>(p) >= r || seen[static_cast<size_t>(p)])
            throw ShapeError("transpose: invalid permutation");
        seen[static_cast<size_t>(p)] = true;
        out_shape[i] = a.dim(static_cast<size_t>(p));
        map_strides[i] = in_strides[static_cast<size_t>(p)];
    }
    Tensor out(out_shape);
    std::vector<int64_t> idx(r, 0);
    const double* pa = a.data();
    double* po = out.data();
    int64_t src = 0;
    for (int64_t o = 0; o < out.numel(); ++o) {
        po[o] = pa[src];
        for (size_t d = r; d-- > 0;) {
            idx[d]++;
            src += map_strides[d];
            if (idx[d] < out_shape[d]) break;
            src -= map_strides[d] * out_shape[d];
            idx[d] = 0;
        }
    }
    return out;
}

Tensor concat(const std::vector<const Tensor*>& parts, int axis) {
    if (parts.empty()) throw ShapeError("concat: no inputs");
    const Tensor& first = *parts[0];
    axis = normalize_axis(axis, first.rank());
    int64_t total = 0;
    for (const Tensor* p : parts) {
        if (p->rank() != first.rank())
            throw ShapeError("concat: rank mismatch " + shape_str(first.shape()) + " vs " + shape_str(p->shape()));
        for (size_t d = 0; d < first.rank(); ++d)
            if (static_cast<int>(d) != axis && p->dim(d) != first.dim(d))
                throw ShapeError("concat: shape mismatch " + shape_str(first.shape()) + " vs " + shape_str(p->shape()));
        total += p->dim(static_cast<size_t>(axis));
    }
    Shape out_shape = first.shape();
    out_shape[static_cast<size_t>(axis)] = total;
    Tensor out(out_shape);
    int64_t outer, len, inner;
    split_axis(out_shape, axis, outer, len, inner);
    int64_t offset = 0;
    for (const Tensor* p : parts) {
        const int64_t plen = p->dim(static_cast<size_t>(axis));
        const double* src = p->data();
        for (int64_t o = 0; o < outer; ++o)
            std::memcpy(out.data() + (o * len + offset) * inner, src + o * plen * inner,
                        static_cast<size_t>(plen * inner) * sizeof(double));
        offset += plen;
    }
    return out;
}

Tensor slice(const Tensor& a, int axis, int64_t start, int64_t len) {
    axis = normalize_axis(axis, a.rank());
    if (start < 0 || len < 0 || start + len > a.dim(static_cast<size_t>(axis)))
        throw ShapeError("slice: range [" + std::to_string(start) + "," + std::to_string(start + len) +
                         ") out of bounds for " + shape_str(a.shape()));
    Shape out_shape = a.shape();
    out_shape[static_cast<size_t>(axis)] = len;
    Tensor out(out_shape);
    int64_t outer, alen, inner;
    split_axis(a.shape(), axis, outer, alen, inner);
    for (int64_t o = 0; o < outer; ++o)
        std::memcpy(out.data() + o * len * inner, a.data() + (o * alen + start) * inner,
                    static_cast<size_t>(len * inner) * sizeof(double));
    return out;
}

Tensor take_rows(const Tensor& a, const std::vector<int64_t>& rows) {
    if (a.rank() < 1) throw ShapeError("take_rows: rank-0 input");
    const int64_t n = a.dim(0);
    const int64_t inner = a.numel() / std::max<int64_t>(n, 1);
    Shape out_shape = a.shape();
    out_shape[0] = static_cast<int64_t>(rows.size());
    Tensor out(out_shape);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] < 0 || rows[i] >= n) throw ShapeError("take_rows: index out of range");
        std::memcpy(out.data() + static_cast<int64_t>(i) * inner, a.data() + rows[i] * inner,
                    static_cast<size_t>(inner) * sizeof(double));
    }
    return out;
}

} // namespace tops

} // namespace critiq
