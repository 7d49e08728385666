#pragma once

#include <complex>
#include <string>
#include <vector>

#include "lgsim/constants.hpp"
#include "lgsim/errors.hpp"

namespace lgsim {

using cdouble = std::complex<double>;

// Complex amplitude vector over an ordered, symbolically labeled basis.
// Immutable after construction; constructors reject non-finite amplitudes.
class StateVector {
public:
    StateVector(std::vector<std::string> labels, std::vector<cdouble> amps);

    static StateVector basis(std::vector<std::string> labels, std::size_t index);

    std::size_t dim() const { return amps_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<cdouble>& amps() const { return amps_; }
    const cdouble& operator[](std::size_t i) const { return amps_[i]; }

    double norm() const;
    bool is_normalized(double eps = tol().norm) const;
    StateVector normalized() const;

private:
    std::vector<std::string> labels_;
    std::vector<cdouble> amps_;
};

// Dense complex square matrix over the same kind of labeled basis.
class LinearOp {
public:
    LinearOp(std::vector<std::string> labels, std::vector<cdouble> entries);

    static LinearOp identity(std::vector<std::string> labels);
    // rows.size() must equal labels.size()^0.5 consistency: dim x dim
    static LinearOp from_rows(std::vector<std::string> labels,
                              const std::vector<std::vector<cdouble>>& rows);

    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const cdouble& at(std::size_t row, std::size_t col) const { return m_[row * dim_ + col]; }

    LinearOp adjoint() const;
    bool is_unitary(double eps = tol().op_identity) const;
    bool is_hermitian(double eps = tol().op_identity) const;
    bool is_involutory(double eps = tol().op_identity) const;

    friend LinearOp operator*(const LinearOp& a, const LinearOp& b);
    friend LinearOp operator+(const LinearOp& a, const LinearOp& b);
    friend LinearOp operator-(const LinearOp& a, const LinearOp& b);
    friend LinearOp operator*(cdouble s, const LinearOp& a);

    double max_abs_diff(const LinearOp& other) const;

private:
    std::vector<std::string> labels_;
    std::vector<cdouble> m_;
    std::size_t dim_;
};

// Kronecker product; composite labels are "a,b" pairs with the first operand
// as the slow (row-major outer) index.
StateVector tensor(const StateVector& a, const StateVector& b);
LinearOp tensor(const LinearOp& a, const LinearOp& b);

StateVector apply(const LinearOp& op, const StateVector& s);
cdouble inner(const StateVector& a, const StateVector& b);

// exp(-i*gamma*A) for involutory A: cos(gamma)*I - i*sin(gamma)*A.
LinearOp exp_involution(const LinearOp& a, double gamma);

// |s><s| for normalized s.
LinearOp projector(const StateVector& s);

// Interferometric predictions are phase-relative; states compare equal when
// |<a|b>| = 1 on unit vectors.
bool equal_up_to_global_phase(const StateVector& a, const StateVector& b,
                              double eps = tol().norm);

// Canonical label registry.
namespace basis {
const std::vector<std::string>& path();  // {U, D}
const std::vector<std::string>& pol();   // {H, V}
std::vector<std::string> composite();    // path (x) pol pairs
}  // namespace basis

// Reference states and observables on the path space {U, D}.
StateVector path_state(cdouble u, cdouble d);
StateVector pol_state(cdouble h, cdouble v);
StateVector psi_pre(double theta);  // cos(theta)|U> + sin(theta)|D>
StateVector plus_m3();              // (|U>+|D>)/sqrt2
StateVector minus_m3();             // (|U>-|D>)/sqrt2

LinearOp sigma_x(std::vector<std::string> labels);
LinearOp sigma_y(std::vector<std::string> labels);
LinearOp sigma_z(std::vector<std::string> labels);
LinearOp m2_op();  // |U><U| - |D><D|
LinearOp m3_op();  // 2|+m3><+m3| - I

}  // namespace lgsim
