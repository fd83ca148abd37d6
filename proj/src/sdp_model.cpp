#include "bwkit/sdp_model.hpp"

#include "bwkit/errors.hpp"

#include <ostream>
#include <sstream>

namespace bwkit::sdp {

namespace {

bool ranges_overlap(Index a0, Index alen, Index b0, Index blen) { return a0 < b0 + blen && b0 < a0 + alen; }

const char* kind_name(VariableKind k) {
  switch (k) {
    case VariableKind::symmetric_matrix:
      return "symmetric";
    case VariableKind::rectangular_matrix:
      return "rectangular";
    case VariableKind::scalar:
      return "scalar";
  }
  return "?";
}

}  // namespace

Index Variable::size() const {
  switch (kind) {
    case VariableKind::symmetric_matrix:
      return rows * (rows + 1) / 2;
    case VariableKind::rectangular_matrix:
      return rows * cols;
    case VariableKind::scalar:
      return 1;
  }
  return 0;
}

Index Variable::slot(Index i, Index j) const {
  if (i < 0 || j < 0 || i >= rows || j >= cols) throw DimensionMismatch("variable entry index out of range");
  switch (kind) {
    case VariableKind::symmetric_matrix:
      if (i > j) std::swap(i, j);
      return offset + j * (j + 1) / 2 + i;
    case VariableKind::rectangular_matrix:
      return offset + i + j * rows;
    case VariableKind::scalar:
      return offset;
  }
  return offset;
}

LinearExpr LinearExpr::slot(Index s, double coeff) {
  LinearExpr e;
  e.add(s, coeff);
  return e;
}

LinearExpr& LinearExpr::add(Index slot, double coeff) {
  const double v = (coeffs_[slot] += coeff);
  if (v == 0.0) coeffs_.erase(slot);
  return *this;
}

LinearExpr& LinearExpr::operator+=(const LinearExpr& other) {
  for (const auto& [s, c] : other.coeffs_) add(s, c);
  constant_ += other.constant_;
  return *this;
}

LinearExpr& LinearExpr::operator-=(const LinearExpr& other) {
  for (const auto& [s, c] : other.coeffs_) add(s, -c);
  constant_ -= other.constant_;
  return *this;
}

LinearExpr& LinearExpr::operator*=(double c) {
  for (auto& [s, v] : coeffs_) v *= c;
  constant_ *= c;
  return *this;
}

double LinearExpr::evaluate(const Vector& slots) const {
  double v = constant_;
  for (const auto& [s, c] : coeffs_) v += c * slots(s);
  return v;
}

LinearExpr trace_product(const Matrix& c, const Variable& v) {
  if (c.rows() != v.cols || c.cols() != v.rows) throw DimensionMismatch("trace_product: coefficient must match V^T");
  LinearExpr e;
  for (Index j = 0; j < v.cols; ++j) {
    for (Index i = 0; i < v.rows; ++i) {
      // tr(C V) = sum_ij C(j, i) V(i, j)
      e.add(v.slot(i, j), c(j, i));
    }
  }
  return e;
}

LinearExpr trace_of(const Variable& v) {
  if (v.rows != v.cols) throw DimensionMismatch("trace_of: variable is not square");
  LinearExpr e;
  for (Index i = 0; i < v.rows; ++i) e.add(v.slot(i, i), 1.0);
  return e;
}

LinearExpr value_of(const Variable& v) {
  if (v.kind != VariableKind::scalar) throw DimensionMismatch("value_of: variable is not scalar");
  return LinearExpr::slot(v.offset);
}

AffineMatrixExpr::AffineMatrixExpr(const Matrix& constant) : constant_(constant) {
  if (constant.rows() != constant.cols() || constant.rows() < 1)
    throw DimensionMismatch("affine matrix expression must be square and non-empty");
  if ((constant - constant.transpose()).cwiseAbs().maxCoeff() > 0.0)
    throw DimensionMismatch("affine matrix expression constant must be symmetric");
}

void AffineMatrixExpr::add_entry(Index slot, Index i, Index j, double coeff) {
  auto& list = terms_[slot];
  list.push_back({i, j, coeff});
  if (i != j) list.push_back({j, i, coeff});
}

void AffineMatrixExpr::check_range(Index row, Index col, Index rows, Index cols) const {
  if (row < 0 || col < 0 || row + rows > dim() || col + cols > dim()) {
    std::ostringstream msg;
    msg << "placement of a " << rows << "x" << cols << " block at (" << row << ", " << col << ") exceeds the "
        << dim() << "x" << dim() << " expression";
    throw DimensionMismatch(msg.str());
  }
}

AffineMatrixExpr& AffineMatrixExpr::place(const Variable& v, Index row, Index col, double scale) {
  check_range(row, col, v.rows, v.cols);
  switch (v.kind) {
    case VariableKind::symmetric_matrix:
      if (row != col) throw DimensionMismatch("symmetric variable must be placed on the diagonal");
      for (Index j = 0; j < v.cols; ++j)
        for (Index i = 0; i <= j; ++i) add_entry(v.slot(i, j), row + i, col + j, scale);
      break;
    case VariableKind::rectangular_matrix:
      if (ranges_overlap(row, v.rows, col, v.cols)) {
        std::ostringstream msg;
        msg << "rectangular variable '" << v.name << "' (" << v.rows << "x" << v.cols << ") placed at (" << row
            << ", " << col << ") crosses the diagonal";
        throw DimensionMismatch(msg.str());
      }
      for (Index j = 0; j < v.cols; ++j)
        for (Index i = 0; i < v.rows; ++i) add_entry(v.slot(i, j), row + i, col + j, scale);
      break;
    case VariableKind::scalar:
      add_entry(v.offset, row, col, scale);
      break;
  }
  return *this;
}

AffineMatrixExpr& AffineMatrixExpr::place_scaled_identity(const Variable& t, Index offset, Index size, double scale) {
  if (t.kind != VariableKind::scalar) throw DimensionMismatch("scaled identity needs a scalar variable");
  check_range(offset, offset, size, size);
  for (Index i = 0; i < size; ++i) add_entry(t.offset, offset + i, offset + i, scale);
  return *this;
}

AffineMatrixExpr& AffineMatrixExpr::place_vectorized(const Variable& v, Index row, Index col, double scale) {
  const Index len = v.rows * v.cols;
  check_range(row, col, len, 1);
  if (ranges_overlap(row, len, col, 1)) throw DimensionMismatch("vectorized placement crosses the diagonal");
  for (Index j = 0; j < v.cols; ++j)
    for (Index i = 0; i < v.rows; ++i) add_entry(v.slot(i, j), row + i + j * v.rows, col, scale);
  return *this;
}

Matrix AffineMatrixExpr::evaluate(const Vector& slots) const {
  Matrix m = constant_;
  for (const auto& [s, list] : terms_)
    for (const MatrixTerm& t : list) m(t.row, t.col) += t.coeff * slots(s);
  return m;
}

Variable SdpProblem::add_variable(VariableKind kind, Index rows, Index cols, std::string name) {
  if (rows < 1 || cols < 1) throw DimensionMismatch("variable dimensions must be positive");
  if (kind == VariableKind::symmetric_matrix && rows != cols) throw DimensionMismatch("symmetric variable must be square");
  if (kind == VariableKind::scalar && (rows != 1 || cols != 1)) throw DimensionMismatch("scalar variable must be 1x1");
  Variable v;
  v.id = VariableId{variables_.size()};
  v.kind = kind;
  v.rows = rows;
  v.cols = cols;
  v.name = std::move(name);
  v.offset = num_slots_;
  num_slots_ += v.size();
  variables_.push_back(v);
  return v;
}

const Variable& SdpProblem::variable(VariableId id) const {
  if (id.value >= variables_.size()) throw UnknownVariable("unknown variable id " + std::to_string(id.value));
  return variables_[id.value];
}

void SdpProblem::check_slots(const LinearExpr& e, const char* where) const {
  for (const auto& [s, c] : e.coefficients()) {
    if (s < 0 || s >= num_slots_) {
      std::ostringstream msg;
      msg << where << ": reference to undeclared variable slot " << s;
      throw UnknownVariable(msg.str());
    }
  }
}

void SdpProblem::set_objective(LinearExpr objective) {
  check_slots(objective, "objective");
  objective_ = std::move(objective);
}

void SdpProblem::add_psd_block(AffineMatrixExpr expr, std::string label) {
  for (const auto& [s, list] : expr.terms()) {
    if (s < 0 || s >= num_slots_) throw UnknownVariable("psd block references an undeclared variable slot");
  }
  psd_.push_back({std::move(expr), std::move(label)});
}

void SdpProblem::add_linear_eq(LinearExpr expr, double rhs) {
  check_slots(expr, "linear equality");
  eqs_.push_back({std::move(expr), rhs, Direction::less_equal});
}

void SdpProblem::add_linear_ineq(LinearExpr expr, double rhs, Direction direction) {
  check_slots(expr, "linear inequality");
  ineqs_.push_back({std::move(expr), rhs, direction});
}

Matrix SdpProblem::extract(const Variable& v, const Vector& slots) const {
  const Variable& own = variable(v.id);
  if (own.offset != v.offset || own.size() != v.size()) throw UnknownVariable("variable does not belong to this problem");
  if (slots.size() != num_slots_) throw DimensionMismatch("slot vector has the wrong length");
  Matrix m(v.rows, v.cols);
  for (Index j = 0; j < v.cols; ++j)
    for (Index i = 0; i < v.rows; ++i) m(i, j) = slots(v.slot(i, j));
  return m;
}

namespace {

void write_linear(std::ostream& os, const SdpProblem& p, const LinearExpr& e) {
  bool first = true;
  for (const auto& [s, c] : e.coefficients()) {
    if (c == 0.0) continue;
    os << (first ? "" : " ") << (c < 0 ? "- " : (first ? "" : "+ ")) << std::abs(c) << "*x" << s;
    first = false;
  }
  if (e.constant() != 0.0 || first) os << (first ? "" : " + ") << e.constant();
  (void)p;
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const SdpProblem& p) {
  os << "variables (" << p.num_slots() << " scalar slots):\n";
  for (const Variable& v : p.variables()) {
    os << "  " << v.name << " [" << kind_name(v.kind) << " " << v.rows << "x" << v.cols << "] slots " << v.offset
       << ".." << v.offset + v.size() - 1 << "\n";
  }
  os << "minimize ";
  write_linear(os, p, p.objective());
  os << "\n";
  for (std::size_t k = 0; k < p.psd_blocks().size(); ++k) {
    const PsdConstraint& b = p.psd_blocks()[k];
    os << "psd block " << k << (b.label.empty() ? "" : " (" + b.label + ")") << " dim " << b.expr.dim() << "\n";
    os << "  constant:\n" << b.expr.constant() << "\n";
    for (const auto& [s, list] : b.expr.terms()) {
      os << "  x" << s << ":";
      for (const MatrixTerm& t : list) os << " (" << t.row << "," << t.col << ")=" << t.coeff;
      os << "\n";
    }
  }
  for (const LinearConstraint& c : p.linear_eqs()) {
    os << "eq: ";
    write_linear(os, p, c.expr);
    os << " == " << c.rhs << "\n";
  }
  for (const LinearConstraint& c : p.linear_ineqs()) {
    os << "ineq: ";
    write_linear(os, p, c.expr);
    os << (c.direction == Direction::less_equal ? " <= " : " >= ") << c.rhs << "\n";
  }
  return os;
}

std::string to_text(const SdpProblem& p) {
  std::ostringstream os;
  os << p;
  return os.str();
}

}  // namespace bwkit::sdp
