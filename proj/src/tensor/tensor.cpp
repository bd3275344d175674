#include "tensor/tensor.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "core/errors.hpp"

namespace heartml::tensor {

using heartml::core::InternalError;
using heartml::core::NumericError;
using heartml::core::ValidationError;

namespace {

std::size_t shape_product(const std::vector<std::size_t>& shape) {
    std::size_t total = 1;
    for (std::size_t d : shape) {
        if (d == 0) throw ValidationError("Tensor: zero-sized dimension");
        total *= d;
    }
    return total;
}

void require_rank(const Tensor& t, std::size_t rank, const char* what) {
    if (t.rank() != rank) {
        throw ValidationError(std::string(what) + ": expected rank " +
                              std::to_string(rank) + ", got " + t.shape_string());
    }
}

} // namespace

Tensor::Tensor(std::vector<std::size_t> shape, double fill)
    : shape_(std::move(shape)), data_(shape_product(shape_), fill) {}

Tensor Tensor::from_data(std::vector<std::size_t> shape, std::vector<double> data) {
    if (shape_product(shape) != data.size()) {
        throw ValidationError("Tensor::from_data: shape does not match value count");
    }
    Tensor t;
    t.shape_ = std::move(shape);
    t.data_ = std::move(data);
    return t;
}

std::size_t Tensor::dim(std::size_t axis) const {
    if (axis >= shape_.size()) {
        throw ValidationError("Tensor::dim: axis out of range");
    }
    return shape_[axis];
}

double& Tensor::at(std::size_t i) {
    if (rank() != 1 || i >= shape_[0]) throw ValidationError("Tensor::at(i): bad index");
    return data_[i];
}

double& Tensor::at(std::size_t i, std::size_t j) {
    if (rank() != 2 || i >= shape_[0] || j >= shape_[1]) {
        throw ValidationError("Tensor::at(i,j): bad index");
    }
    return data_[i * shape_[1] + j];
}

double& Tensor::at(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    if (rank() != 4 || i >= shape_[0] || j >= shape_[1] || k >= shape_[2] || l >= shape_[3]) {
        throw ValidationError("Tensor::at(i,j,k,l): bad index");
    }
    return data_[((i * shape_[1] + j) * shape_[2] + k) * shape_[3] + l];
}

double Tensor::at(std::size_t i) const { return const_cast<Tensor*>(this)->at(i); }
double Tensor::at(std::size_t i, std::size_t j) const {
    return const_cast<Tensor*>(this)->at(i, j);
}
double Tensor::at(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return const_cast<Tensor*>(this)->at(i, j, k, l);
}

Tensor Tensor::reshaped(std::vector<std::size_t> shape) const {
    if (shape_product(shape) != data_.size()) {
        throw ValidationError("Tensor::reshaped: element count mismatch");
    }
    Tensor t;
    t.shape_ = std::move(shape);
    t.data_ = data_;
    return t;
}

void Tensor::fill(double value) {
    for (double& v : data_) v = value;
}

bool Tensor::all_finite() const noexcept {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

void Tensor::ensure_finite(const std::string& what) const {
    if (!all_finite()) {
        throw NumericError(what + ": non-finite value encountered");
    }
}

bool Tensor::same_shape(const Tensor& other) const noexcept {
    return shape_ == other.shape_;
}

std::string Tensor::shape_string() const {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < shape_.size(); ++i) {
        if (i) out << ", ";
        out << shape_[i];
    }
    out << ")";
    return out.str();
}

Tensor matmul(const Tensor& a, const Tensor& b) {
    require_rank(a, 2, "matmul lhs");
    require_rank(b, 2, "matmul rhs");
    const std::size_t m = a.dim(0), k = a.dim(1), n = b.dim(1);
    if (b.dim(0) != k) {
        throw ValidationError("matmul: inner dimensions differ, " + a.shape_string() +
                              " vs " + b.shape_string());
    }
    Tensor c({m, n});
    const double* ap = a.data();
    const double* bp = b.data();
    double* cp = c.data();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t p = 0; p < k; ++p) {
            const double av = ap[i * k + p];
            const double* brow = bp + p * n;
            double* crow = cp + i * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
    return c;
}

Tensor matmul_transposed(const Tensor& a, const Tensor& b) {
    require_rank(a, 2, "matmul_transposed lhs");
    require_rank(b, 2, "matmul_transposed rhs");
    const std::size_t m = a.dim(0), k = a.dim(1), n = b.dim(0);
    if (b.dim(1) != k) {
        throw ValidationError("matmul_transposed: inner dimensions differ, " +
                              a.shape_string() + " vs " + b.shape_string());
    }
    Tensor c({m, n});
    const double* ap = a.data();
    const double* bp = b.data();
    double* cp = c.data();
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = ap + i * k;
        for (std::size_t j = 0; j < n; ++j) {
            const double* brow = bp + j * k;
            double acc = 0.0;
            for (std::size_t p = 0; p < k; ++p) acc += arow[p] * brow[p];
            cp[i * n + j] = acc;
        }
    }
    return c;
}

Tensor matmul_transpose_a(const Tensor& a, const Tensor& b) {
    require_rank(a, 2, "matmul_transpose_a lhs");
    require_rank(b, 2, "matmul_transpose_a rhs");
    const std::size_t k = a.dim(0), m = a.dim(1), n = b.dim(1);
    if (b.dim(0) != k) {
        throw ValidationError("matmul_transpose_a: inner dimensions differ, " +
                              a.shape_string() + " vs " + b.shape_string());
    }
    Tensor c({m, n});
    const double* ap = a.data();
    const double* bp = b.data();
    double* cp = c.data();
    for (std::size_t p = 0; p < k; ++p) {
        const double* arow = ap + p * m;
        const double* brow = bp + p * n;
        for (std::size_t i = 0; i < m; ++i) {
            const double av = arow[i];
            double* crow = cp + i * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
    return c;
}

void add_inplace(Tensor& target, const Tensor& delta) {
    if (!target.same_shape(delta)) {
        throw ValidationError("add_inplace: shape mismatch, " + target.shape_string() +
                              " vs " + delta.shape_string());
    }
    double* tp = target.data();
    const double* dp = delta.data();
    for (std::size_t i = 0; i < target.size(); ++i) tp[i] += dp[i];
}

void scale_inplace(Tensor& target, double factor) {
    for (double& v : target.values()) v *= factor;
}

} // namespace heartml::tensor
