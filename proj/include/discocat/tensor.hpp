#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace discocat {

struct TensorError : std::runtime_error {
    explicit TensorError(const std::string& what) : std::runtime_error(what) {}
};

// Dense real tensor in row-major layout.  Scalars have an empty shape
// and a single data entry.  Values are immutable in spirit: operations
// return fresh tensors, so sharing across threads is safe.
class Tensor {
public:
    Tensor() : data_(1, 0.0) {}  // scalar zero

    static Tensor scalar(double v);
    static Tensor zeros(std::vector<std::size_t> shape);
    static Tensor from_data(std::vector<std::size_t> shape, std::vector<double> data);
    static Tensor basis(std::size_t dim, std::size_t index);
    // Identity matrix as a rank-2 tensor; doubles as the cap/eta state.
    static Tensor identity(std::size_t dim);
    static Tensor from_matrix(const std::vector<std::vector<double>>& rows);

    const std::vector<std::size_t>& shape() const { return shape_; }
    std::size_t rank() const { return shape_.size(); }
    std::size_t size() const { return data_.size(); }
    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool is_scalar() const { return shape_.empty(); }
    double scalar_value() const;

    double at(const std::vector<std::size_t>& index) const;
    double& at(const std::vector<std::size_t>& index);
    std::size_t offset(const std::vector<std::size_t>& index) const;

    friend bool operator==(const Tensor& a, const Tensor& b) {
        return a.shape_ == b.shape_ && a.data_ == b.data_;
    }

private:
    std::vector<std::size_t> shape_;
    std::vector<double> data_;
};

// shape = concat of shapes; entries are all pairwise products.
Tensor tensor_product(const Tensor& a, const Tensor& b);

// Sums the diagonal over two equal-sized axes (the Euclidean inner
// product against the fixed basis).
Tensor contract(const Tensor& t, std::size_t axis_i, std::size_t axis_j);

// Applies a rank-2 matrix m (layout [out, in]) to one axis of t.
Tensor apply_matrix(const Tensor& t, std::size_t axis, const Tensor& m);

Tensor transpose(const Tensor& t, const std::vector<std::size_t>& perm);

Tensor add(const Tensor& a, const Tensor& b);
Tensor hadamard(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& t, double factor);

double inner(const Tensor& a, const Tensor& b);
double norm(const Tensor& t);

struct CosineResult {
    double value = 0.0;
    bool zero_norm = false;  // set when either input has zero norm
};

// Cosine of the angle between two same-shaped tensors.  A zero-norm
// input yields 0 with the flag set instead of an error, so batch
// evaluations over sparse models never abort mid-dataset.
CosineResult cosine(const Tensor& a, const Tensor& b);

// v tensored with itself k times (k >= 1); v must be rank 1.
Tensor kronecker_power(const Tensor& v, std::size_t k);

// JSON form {"shape":[...], "data":[...]} with row-major data.
std::string tensor_to_json(const Tensor& t);
Tensor tensor_from_json(const std::string& text);

}  // namespace discocat
