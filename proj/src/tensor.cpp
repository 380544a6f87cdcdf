#include "discocat/tensor.hpp"

#include <cmath>
#include <numeric>

#include "json.hpp"

namespace discocat {

namespace {

std::size_t shape_size(const std::vector<std::size_t>& shape) {
    std::size_t n = 1;
    for (std::size_t d : shape) {
        if (d == 0) throw TensorError("zero-sized dimension");
        n *= d;
    }
    return n;
}

std::string shape_str(const std::vector<std::size_t>& shape) {
    std::string s = "[";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(shape[i]);
    }
    return s + "]";
}

}  // namespace

Tensor Tensor::scalar(double v) {
    Tensor t;
    t.data_[0] = v;
    return t;
}

Tensor Tensor::zeros(std::vector<std::size_t> shape) {
    Tensor t;
    t.data_.assign(shape_size(shape), 0.0);
    t.shape_ = std::move(shape);
    return t;
}

Tensor Tensor::from_data(std::vector<std::size_t> shape, std::vector<double> data) {
    if (shape_size(shape) != data.size())
        throw TensorError("data length " + std::to_string(data.size()) +
                          " does not match shape " + shape_str(shape));
    Tensor t;
    t.shape_ = std::move(shape);
    t.data_ = std::move(data);
    return t;
}

Tensor Tensor::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw TensorError("basis index out of range");
    Tensor t = zeros({dim});
    t.data_[index] = 1.0;
    return t;
}

Tensor Tensor::identity(std::size_t dim) {
    Tensor t = zeros({dim, dim});
    for (std::size_t i = 0; i < dim; ++i) t.data_[i * dim + i] = 1.0;
    return t;
}

Tensor Tensor::from_matrix(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw TensorError("empty matrix");
    std::size_t cols = rows[0].size();
    std::vector<double> data;
    data.reserve(rows.size() * cols);
    for (const auto& row : rows) {
        if (row.size() != cols) throw TensorError("ragged matrix rows");
        data.insert(data.end(), row.begin(), row.end());
    }
    return from_data({rows.size(), cols}, std::move(data));
}

double Tensor::scalar_value() const {
    if (!is_scalar()) throw TensorError("scalar_value on non-scalar tensor");
    return data_[0];
}

std::size_t Tensor::offset(const std::vector<std::size_t>& index) const {
    if (index.size() != shape_.size()) throw TensorError("index rank mismatch");
    std::size_t off = 0;
    for (std::size_t k = 0; k < index.size(); ++k) {
        if (index[k] >= shape_[k]) throw TensorError("index out of range");
        off = off * shape_[k] + index[k];
    }
    return off;
}

double Tensor::at(const std::vector<std::size_t>& index) const { return data_[offset(index)]; }
double& Tensor::at(const std::vector<std::size_t>& index) { return data_[offset(index)]; }

Tensor tensor_product(const Tensor& a, const Tensor& b) {
    std::vector<std::size_t> shape = a.shape();
    shape.insert(shape.end(), b.shape().begin(), b.shape().end());
    Tensor out = Tensor::zeros(std::move(shape));
    std::size_t bn = b.size();
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < bn; ++j)
            out.data()[i * bn + j] = a.data()[i] * b.data()[j];
    return out;
}

Tensor contract(const Tensor& t, std::size_t axis_i, std::size_t axis_j) {
    const auto& shape = t.shape();
    if (axis_i >= shape.size() || axis_j >= shape.size() || axis_i == axis_j)
        throw TensorError("contract: bad axes");
    if (shape[axis_i] != shape[axis_j])
        throw TensorError("contract: dimension mismatch " + std::to_string(shape[axis_i]) +
                          " vs " + std::to_string(shape[axis_j]) + " on shape " +
                          shape_str(shape));
    if (axis_i > axis_j) std::swap(axis_i, axis_j);

    std::vector<std::size_t> out_shape;
    for (std::size_t k = 0; k < shape.size(); ++k)
        if (k != axis_i && k != axis_j) out_shape.push_back(shape[k]);
    Tensor out = Tensor::zeros(out_shape.empty() ? std::vector<std::size_t>{} : out_shape);

    // Strides of the input in row-major order.
    std::vector<std::size_t> stride(shape.size(), 1);
    for (std::size_t k = shape.size(); k-- > 1;) stride[k - 1] = stride[k] * shape[k];

    const std::size_t d = shape[axis_i];
    std::vector<std::size_t> out_index(out_shape.size(), 0);
    std::size_t out_count = out.size();
    for (std::size_t o = 0; o < out_count; ++o) {
        // Base offset of the surviving axes.
        std::size_t base = 0, k_out = 0;
        for (std::size_t k = 0; k < shape.size(); ++k) {
            if (k == axis_i || k == axis_j) continue;
            base += out_index[k_out++] * stride[k];
        }
        double sum = 0.0;
        for (std::size_t c = 0; c < d; ++c)
            sum += t.data()[base + c * (stride[axis_i] + stride[axis_j])];
        out.data()[o] = sum;
        for (std::size_t k = out_index.size(); k-- > 0;) {
            if (++out_index[k] < out_shape[k]) break;
            out_index[k] = 0;
        }
    }
    return out;
}

Tensor apply_matrix(const Tensor& t, std::size_t axis, const Tensor& m) {
    if (m.rank() != 2) throw TensorError("apply_matrix: matrix must be rank 2");
    if (axis >= t.rank()) throw TensorError("apply_matrix: bad axis");
    if (m.shape()[1] != t.shape()[axis])
        throw TensorError("apply_matrix: matrix columns " + std::to_string(m.shape()[1]) +
                          " do not match axis size " + std::to_string(t.shape()[axis]));
    std::vector<std::size_t> out_shape = t.shape();
    out_shape[axis] = m.shape()[0];
    Tensor out = Tensor::zeros(out_shape);

    std::size_t inner_stride = 1;
    for (std::size_t k = axis + 1; k < t.rank(); ++k) inner_stride *= t.shape()[k];
    std::size_t outer = t.size() / (inner_stride * t.shape()[axis]);
    std::size_t rows = m.shape()[0], cols = m.shape()[1];
    for (std::size_t a = 0; a < outer; ++a) {
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t in = 0; in < inner_stride; ++in) {
                double sum = 0.0;
                for (std::size_t c = 0; c < cols; ++c)
                    sum += m.data()[r * cols + c] *
                           t.data()[(a * cols + c) * inner_stride + in];
                out.data()[(a * rows + r) * inner_stride + in] = sum;
            }
        }
    }
    return out;
}

Tensor transpose(const Tensor& t, const std::vector<std::size_t>& perm) {
    if (perm.size() != t.rank()) throw TensorError("transpose: bad permutation size");
    std::vector<bool> seen(perm.size(), false);
    std::vector<std::size_t> out_shape(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) {
        if (perm[k] >= perm.size() || seen[perm[k]]) throw TensorError("transpose: not a permutation");
        seen[perm[k]] = true;
        out_shape[k] = t.shape()[perm[k]];
    }
    Tensor out = Tensor::zeros(out_shape.empty() ? std::vector<std::size_t>{} : out_shape);
    std::vector<std::size_t> stride(t.rank(), 1);
    for (std::size_t k = t.rank(); k-- > 1;) stride[k - 1] = stride[k] * t.shape()[k];
    std::vector<std::size_t> idx(out_shape.size(), 0);
    for (std::size_t o = 0; o < out.size(); ++o) {
        std::size_t src = 0;
        for (std::size_t k = 0; k < idx.size(); ++k) src += idx[k] * stride[perm[k]];
        out.data()[o] = t.data()[src];
        for (std::size_t k = idx.size(); k-- > 0;) {
            if (++idx[k] < out_shape[k]) break;
            idx[k] = 0;
        }
    }
    return out;
}

Tensor add(const Tensor& a, const Tensor& b) {
    if (a.shape() != b.shape()) throw TensorError("add: shape mismatch");
    Tensor out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] += b.data()[i];
    return out;
}

Tensor hadamard(const Tensor& a, const Tensor& b) {
    if (a.shape() != b.shape()) throw TensorError("hadamard: shape mismatch");
    Tensor out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] *= b.data()[i];
    return out;
}

Tensor scale(const Tensor& t, double factor) {
    Tensor out = t;
    for (double& v : out.data()) v *= factor;
    return out;
}

double inner(const Tensor& a, const Tensor& b) {
    if (a.shape() != b.shape()) throw TensorError("inner: shape mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a.data()[i] * b.data()[i];
    return sum;
}

double norm(const Tensor& t) { return std::sqrt(inner(t, t)); }

CosineResult cosine(const Tensor& a, const Tensor& b) {
    if (a.shape() != b.shape()) throw TensorError("cosine: shape mismatch");
    double na = norm(a), nb = norm(b);
    if (na == 0.0 || nb == 0.0) return {0.0, true};
    double v = inner(a, b) / (na * nb);
    if (v > 1.0) v = 1.0;
    if (v < -1.0) v = -1.0;
    return {v, false};
}

Tensor kronecker_power(const Tensor& v, std::size_t k) {
    if (v.rank() != 1) throw TensorError("kronecker_power: rank-1 input required");
    if (k < 1) throw TensorError("kronecker_power: k must be >= 1");
    Tensor out = v;
    for (std::size_t i = 1; i < k; ++i) out = tensor_product(out, v);
    return out;
}

std::string tensor_to_json(const Tensor& t) {
    nlohmann::ordered_json j;
    j["shape"] = t.shape();
    j["data"] = t.data();
    return j.dump();
}

Tensor tensor_from_json(const std::string& text) {
    try {
        auto j = nlohmann::json::parse(text);
        return Tensor::from_data(j.at("shape").get<std::vector<std::size_t>>(),
                                 j.at("data").get<std::vector<double>>());
    } catch (const nlohmann::json::exception& e) {
        throw TensorError(std::string("bad tensor json: ") + e.what());
    }
}

}  // namespace discocat
