// Dense row-major tensor over 64-bit doubles. Shapes are explicit and every
// arithmetic entry point validates them; silent broadcasting is deliberately
// not supported.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace heartml::tensor {

class Tensor {
public:
    Tensor() = default;
    explicit Tensor(std::vector<std::size_t> shape, double fill = 0.0);
    static Tensor from_data(std::vector<std::size_t> shape, std::vector<double> data);

    const std::vector<std::size_t>& shape() const noexcept { return shape_; }
    std::size_t rank() const noexcept { return shape_.size(); }
    std::size_t dim(std::size_t axis) const;
    std::size_t size() const noexcept { return data_.size(); }

    double* data() noexcept { return data_.data(); }
    const double* data() const noexcept { return data_.data(); }
    std::vector<double>& values() noexcept { return data_; }
    const std::vector<double>& values() const noexcept { return data_; }

    double& operator[](std::size_t flat) { return data_[flat]; }
    double operator[](std::size_t flat) const { return data_[flat]; }

    double& at(std::size_t i);
    double& at(std::size_t i, std::size_t j);
    double& at(std::size_t i, std::size_t j, std::size_t k, std::size_t l);
    double at(std::size_t i) const;
    double at(std::size_t i, std::size_t j) const;
    double at(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const;

    // Same storage, new shape; element count must match.
    Tensor reshaped(std::vector<std::size_t> shape) const;

    void fill(double value);
    bool all_finite() const noexcept;
    // Throws NumericError naming `what` when a NaN or infinity is present.
    void ensure_finite(const std::string& what) const;

    bool same_shape(const Tensor& other) const noexcept;
    std::string shape_string() const;

private:
    std::vector<std::size_t> shape_;
    std::vector<double> data_;
};

// c = a @ b for 2-D tensors, (m x k) @ (k x n).
Tensor matmul(const Tensor& a, const Tensor& b);

// c = a @ b^T, (m x k) @ (n x k)^T. The layouts used by the layers below.
Tensor matmul_transposed(const Tensor& a, const Tensor& b);

// c = a^T @ b, (k x m)^T @ (k x n).
Tensor matmul_transpose_a(const Tensor& a, const Tensor& b);

void add_inplace(Tensor& target, const Tensor& delta);
void scale_inplace(Tensor& target, double factor);

} // namespace heartml::tensor
