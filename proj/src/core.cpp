#include "lgsim/core.hpp"

#include <cmath>
#include <utility>

namespace lgsim {

namespace {

void check_finite(const std::vector<cdouble>& v, const char* what) {
    for (const auto& z : v) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument(std::string(what) + ": non-finite component");
    }
}

void check_same_basis(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a != b) throw BasisMismatch("basis labels do not match");
}

}  // namespace

StateVector::StateVector(std::vector<std::string> labels, std::vector<cdouble> amps)
    : labels_(std::move(labels)), amps_(std::move(amps)) {
    if (labels_.empty() || labels_.size() != amps_.size())
        throw std::invalid_argument("StateVector: label/amplitude length mismatch");
    check_finite(amps_, "StateVector");
}

StateVector StateVector::basis(std::vector<std::string> labels, std::size_t index) {
    if (index >= labels.size()) throw std::invalid_argument("StateVector::basis: index out of range");
    std::vector<cdouble> amps(labels.size(), 0.0);
    amps[index] = 1.0;
    return StateVector(std::move(labels), std::move(amps));
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& z : amps_) s += std::norm(z);
    return std::sqrt(s);
}

bool StateVector::is_normalized(double eps) const { return std::abs(norm() - 1.0) <= eps; }

StateVector StateVector::normalized() const {
    double n = norm();
    if (n == 0.0) throw std::invalid_argument("StateVector: cannot normalize zero vector");
    std::vector<cdouble> amps = amps_;
    for (auto& z : amps) z /= n;
    return StateVector(labels_, std::move(amps));
}

LinearOp::LinearOp(std::vector<std::string> labels, std::vector<cdouble> entries)
    : labels_(std::move(labels)), m_(std::move(entries)), dim_(labels_.size()) {
    if (dim_ == 0 || m_.size() != dim_ * dim_)
        throw std::invalid_argument("LinearOp: entries must form a dim x dim matrix");
    check_finite(m_, "LinearOp");
}

LinearOp LinearOp::identity(std::vector<std::string> labels) {
    std::size_t d = labels.size();
    std::vector<cdouble> m(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) m[i * d + i] = 1.0;
    return LinearOp(std::move(labels), std::move(m));
}

LinearOp LinearOp::from_rows(std::vector<std::string> labels,
                             const std::vector<std::vector<cdouble>>& rows) {
    std::size_t d = labels.size();
    if (rows.size() != d) throw std::invalid_argument("LinearOp::from_rows: wrong row count");
    std::vector<cdouble> m;
    m.reserve(d * d);
    for (const auto& r : rows) {
        if (r.size() != d) throw std::invalid_argument("LinearOp::from_rows: wrong row length");
        m.insert(m.end(), r.begin(), r.end());
    }
    return LinearOp(std::move(labels), std::move(m));
}

LinearOp LinearOp::adjoint() const {
    std::vector<cdouble> m(dim_ * dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m[j * dim_ + i] = std::conj(at(i, j));
    return LinearOp(labels_, std::move(m));
}

double LinearOp::max_abs_diff(const LinearOp& other) const {
    check_same_basis(labels_, other.labels_);
    double d = 0.0;
    for (std::size_t i = 0; i < m_.size(); ++i) d = std::max(d, std::abs(m_[i] - other.m_[i]));
    return d;
}

bool LinearOp::is_unitary(double eps) const {
    return (adjoint() * *this).max_abs_diff(identity(labels_)) <= eps;
}

bool LinearOp::is_hermitian(double eps) const { return max_abs_diff(adjoint()) <= eps; }

bool LinearOp::is_involutory(double eps) const {
    return (*this * *this).max_abs_diff(identity(labels_)) <= eps;
}

LinearOp operator*(const LinearOp& a, const LinearOp& b) {
    check_same_basis(a.labels_, b.labels_);
    std::size_t d = a.dim_;
    std::vector<cdouble> m(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            cdouble aik = a.at(i, k);
            if (aik == cdouble{}) continue;
            for (std::size_t j = 0; j < d; ++j) m[i * d + j] += aik * b.at(k, j);
        }
    return LinearOp(a.labels_, std::move(m));
}

LinearOp operator+(const LinearOp& a, const LinearOp& b) {
    check_same_basis(a.labels_, b.labels_);
    std::vector<cdouble> m(a.m_);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += b.m_[i];
    return LinearOp(a.labels_, std::move(m));
}

LinearOp operator-(const LinearOp& a, const LinearOp& b) {
    check_same_basis(a.labels_, b.labels_);
    std::vector<cdouble> m(a.m_);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] -= b.m_[i];
    return LinearOp(a.labels_, std::move(m));
}

LinearOp operator*(cdouble s, const LinearOp& a) {
    std::vector<cdouble> m(a.m_);
    for (auto& z : m) z *= s;
    return LinearOp(a.labels_, std::move(m));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    std::vector<std::string> labels;
    std::vector<cdouble> amps;
    labels.reserve(a.dim() * b.dim());
    amps.reserve(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) {
            labels.push_back(a.labels()[i] + "," + b.labels()[j]);
            amps.push_back(a[i] * b[j]);
        }
    return StateVector(std::move(labels), std::move(amps));
}

LinearOp tensor(const LinearOp& a, const LinearOp& b) {
    std::size_t da = a.dim(), db = b.dim(), d = da * db;
    std::vector<std::string> labels;
    labels.reserve(d);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j) labels.push_back(a.labels()[i] + "," + b.labels()[j]);
    std::vector<cdouble> m(d * d);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j)
            for (std::size_t k = 0; k < db; ++k)
                for (std::size_t l = 0; l < db; ++l)
                    m[(i * db + k) * d + (j * db + l)] = a.at(i, j) * b.at(k, l);
    return LinearOp(std::move(labels), std::move(m));
}

StateVector apply(const LinearOp& op, const StateVector& s) {
    check_same_basis(op.labels(), s.labels());
    std::size_t d = op.dim();
    std::vector<cdouble> amps(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) amps[i] += op.at(i, j) * s[j];
    return StateVector(op.labels(), std::move(amps));
}

cdouble inner(const StateVector& a, const StateVector& b) {
    check_same_basis(a.labels(), b.labels());
    cdouble r = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) r += std::conj(a[i]) * b[i];
    return r;
}

LinearOp exp_involution(const LinearOp& a, double gamma) {
    if (!a.is_involutory()) throw NotInvolutory("exp_involution: operator is not involutory");
    return cdouble{std::cos(gamma), 0.0} * LinearOp::identity(a.labels()) +
           cdouble{0.0, -std::sin(gamma)} * a;
}

LinearOp projector(const StateVector& s) {
    if (!s.is_normalized())
        throw std::invalid_argument("projector: state is not normalized");
    std::size_t d = s.dim();
    std::vector<cdouble> m(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m[i * d + j] = s[i] * std::conj(s[j]);
    return LinearOp(s.labels(), std::move(m));
}

bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double eps) {
    if (!a.is_normalized(1e-9) || !b.is_normalized(1e-9)) {
        return equal_up_to_global_phase(a.normalized(), b.normalized(), eps);
    }
    return std::abs(std::abs(inner(a, b)) - 1.0) <= eps;
}

namespace basis {
const std::vector<std::string>& path() {
    static const std::vector<std::string> b{"U", "D"};
    return b;
}
const std::vector<std::string>& pol() {
    static const std::vector<std::string> b{"H", "V"};
    return b;
}
std::vector<std::string> composite() {
    std::vector<std::string> out;
    for (const auto& p : path())
        for (const auto& q : pol()) out.push_back(p + "," + q);
    return out;
}
}  // namespace basis

StateVector path_state(cdouble u, cdouble d) { return StateVector(basis::path(), {u, d}); }
StateVector pol_state(cdouble h, cdouble v) { return StateVector(basis::pol(), {h, v}); }

StateVector psi_pre(double theta) { return path_state(std::cos(theta), std::sin(theta)); }

StateVector plus_m3() { return path_state(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)); }
StateVector minus_m3() { return path_state(1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)); }

LinearOp sigma_x(std::vector<std::string> labels) {
    return LinearOp(std::move(labels), {0.0, 1.0, 1.0, 0.0});
}
LinearOp sigma_y(std::vector<std::string> labels) {
    return LinearOp(std::move(labels), {0.0, cdouble{0.0, -1.0}, cdouble{0.0, 1.0}, 0.0});
}
LinearOp sigma_z(std::vector<std::string> labels) {
    return LinearOp(std::move(labels), {1.0, 0.0, 0.0, -1.0});
}

LinearOp m2_op() { return sigma_z(basis::path()); }

LinearOp m3_op() {
    return cdouble{2.0, 0.0} * projector(plus_m3()) - LinearOp::identity(basis::path());
}

}  // namespace lgsim
