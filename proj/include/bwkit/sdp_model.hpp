#pragma once

#include "bwkit/matrix_core.hpp"

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace bwkit::sdp {

struct VariableId {
  std::size_t value = 0;
  auto operator<=>(const VariableId&) const = default;
};

enum class VariableKind { symmetric_matrix, rectangular_matrix, scalar };

/// A decision variable. Matrix variables occupy a contiguous run of scalar
/// slots starting at `offset`: rectangular ones column-major, symmetric ones
/// one slot per upper-triangle entry.
struct Variable {
  VariableId id;
  VariableKind kind = VariableKind::scalar;
  Index rows = 1;
  Index cols = 1;
  std::string name;
  Index offset = 0;

  Index size() const;
  /// Scalar slot holding entry (i, j).
  Index slot(Index i, Index j) const;
};

/// Linear functional over scalar slots plus a constant.
class LinearExpr {
 public:
  LinearExpr() = default;
  explicit LinearExpr(double constant) : constant_(constant) {}

  static LinearExpr slot(Index s, double coeff = 1.0);

  double constant() const { return constant_; }
  const std::map<Index, double>& coefficients() const { return coeffs_; }

  LinearExpr& add(Index slot, double coeff);
  LinearExpr& operator+=(const LinearExpr& other);
  LinearExpr& operator-=(const LinearExpr& other);
  LinearExpr& operator*=(double c);
  LinearExpr& operator+=(double c) {
    constant_ += c;
    return *this;
  }

  double evaluate(const Vector& slots) const;

  friend LinearExpr operator+(LinearExpr a, const LinearExpr& b) { return a += b; }
  friend LinearExpr operator-(LinearExpr a, const LinearExpr& b) { return a -= b; }
  friend LinearExpr operator*(double c, LinearExpr a) { return a *= c; }
  friend LinearExpr operator+(LinearExpr a, double c) { return a += c; }

 private:
  std::map<Index, double> coeffs_;
  double constant_ = 0.0;
};

/// tr(C V) for a matrix variable V. C has the shape of V^T.
LinearExpr trace_product(const Matrix& c, const Variable& v);
/// tr(V) for a square variable.
LinearExpr trace_of(const Variable& v);
/// The scalar variable itself.
LinearExpr value_of(const Variable& v);

/// One entry of a symmetric matrix expression that depends on a slot.
struct MatrixTerm {
  Index row;
  Index col;
  double coeff;
};

/// Symmetric matrix-valued expression, affine in the scalar slots. Each
/// placement writes both (i, j) and (j, i), so the expression stays symmetric
/// by construction.
class AffineMatrixExpr {
 public:
  explicit AffineMatrixExpr(const Matrix& constant);
  explicit AffineMatrixExpr(Index dim) : AffineMatrixExpr(Matrix::Zero(dim, dim)) {}

  Index dim() const { return constant_.rows(); }
  const Matrix& constant() const { return constant_; }
  const std::map<Index, std::vector<MatrixTerm>>& terms() const { return terms_; }

  /// Places `scale * V` with its top-left corner at (row, col). Symmetric
  /// variables must sit on the diagonal (row == col). Rectangular and scalar
  /// variables must lie strictly off the diagonal; their transpose is
  /// mirrored into (col, row).
  AffineMatrixExpr& place(const Variable& v, Index row, Index col, double scale = 1.0);

  /// Places `scale * t * I_size` on the diagonal starting at `offset`.
  AffineMatrixExpr& place_scaled_identity(const Variable& t, Index offset, Index size, double scale = 1.0);

  /// Places vec(V) (column-major, all rows*cols entries) as a column starting
  /// at (row, col); the transpose is mirrored into (col, row). Must be off
  /// the diagonal.
  AffineMatrixExpr& place_vectorized(const Variable& v, Index row, Index col, double scale = 1.0);

  /// Value of the expression at the given slot assignment.
  Matrix evaluate(const Vector& slots) const;

 private:
  void add_entry(Index slot, Index i, Index j, double coeff);
  void check_range(Index row, Index col, Index rows, Index cols) const;

  Matrix constant_;
  std::map<Index, std::vector<MatrixTerm>> terms_;
};

enum class Direction { less_equal, greater_equal };

struct LinearConstraint {
  LinearExpr expr;
  double rhs = 0.0;
  Direction direction = Direction::less_equal;  // ignored for equalities
};

struct PsdConstraint {
  AffineMatrixExpr expr;
  std::string label;
};

/// Minimize a linear objective subject to affine PSD blocks and linear
/// equalities / inequalities.
class SdpProblem {
 public:
  Variable add_variable(VariableKind kind, Index rows, Index cols, std::string name);
  Variable add_symmetric(Index n, std::string name) {
    return add_variable(VariableKind::symmetric_matrix, n, n, std::move(name));
  }
  Variable add_rectangular(Index rows, Index cols, std::string name) {
    return add_variable(VariableKind::rectangular_matrix, rows, cols, std::move(name));
  }
  Variable add_scalar(std::string name) { return add_variable(VariableKind::scalar, 1, 1, std::move(name)); }

  void set_objective(LinearExpr objective);
  void add_psd_block(AffineMatrixExpr expr, std::string label = {});
  void add_linear_eq(LinearExpr expr, double rhs);
  void add_linear_ineq(LinearExpr expr, double rhs, Direction direction);

  const std::vector<Variable>& variables() const { return variables_; }
  const Variable& variable(VariableId id) const;
  Index num_slots() const { return num_slots_; }
  const LinearExpr& objective() const { return objective_; }
  const std::vector<PsdConstraint>& psd_blocks() const { return psd_; }
  const std::vector<LinearConstraint>& linear_eqs() const { return eqs_; }
  const std::vector<LinearConstraint>& linear_ineqs() const { return ineqs_; }

  /// Reassembles a variable's value from a slot vector.
  Matrix extract(const Variable& v, const Vector& slots) const;

 private:
  void check_slots(const LinearExpr& e, const char* where) const;

  std::vector<Variable> variables_;
  Index num_slots_ = 0;
  LinearExpr objective_;
  std::vector<PsdConstraint> psd_;
  std::vector<LinearConstraint> eqs_;
  std::vector<LinearConstraint> ineqs_;
};

/// Human-readable dump for bug reports.
std::ostream& operator<<(std::ostream& os, const SdpProblem& p);
std::string to_text(const SdpProblem& p);

}  // namespace bwkit::sdp
