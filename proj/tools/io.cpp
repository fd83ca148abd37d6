#include "io.hpp"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <system_error>

#include "bwkit/errors.hpp"

namespace bwkit::app {

namespace {

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) throw InputError(where + ": expected a number");
  return j.get<double>();
}

Index index_at(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) throw InputError(where + ": missing integer field '" + key + "'");
  const auto v = j.at(key).get<long long>();
  if (v < 1) throw InputError(where + ": field '" + key + "' must be >= 1");
  return static_cast<Index>(v);
}

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected a JSON object");
}

std::string where_of(const std::string& parent, const std::string& child) { return parent + "." + child; }

}  // namespace

json matrix_to_json(const Matrix& m, const std::string& name) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  json out = {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
  if (!name.empty()) out["name"] = name;
  return out;
}

SymmetricMatrix matrix_from_json(const json& j, const std::string& where) {
  require_object(j, where);
  const Index rows = index_at(j, "rows", where);
  const Index cols = index_at(j, "cols", where);
  if (rows != cols) throw InputError(where + ": matrix must be square (rows == cols)");
  if (!j.contains("entries") || !j.at("entries").is_array()) throw InputError(where + ": missing array 'entries'");
  const json& e = j.at("entries");
  if (static_cast<Index>(e.size()) != rows) throw InputError(where + ": 'entries' has the wrong number of rows");
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = e.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw InputError(where + ": row " + std::to_string(i) + " has the wrong length");
    for (Index k = 0; k < cols; ++k)
      m(i, k) = number_at(row.at(static_cast<std::size_t>(k)), where + ".entries[" + std::to_string(i) + "]");
  }
  try {
    return SymmetricMatrix::symmetrize(m);
  } catch (const AsymmetryError& ex) {
    throw AsymmetryError(where + ": " + ex.what());
  }
}

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

InputFile read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  InputFile f;
  f.path = path;
  f.sha256 = sha256_hex(bytes);
  try {
    f.content = json::parse(bytes);
  } catch (const json::parse_error& ex) {
    throw InputError("'" + path.string() + "' is not valid JSON: " + ex.what());
  }
  return f;
}

void write_atomically(const fs::path& path, const std::string& text) {
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::random_device rd;
  const fs::path tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write to '" + tmp.string() + "'");
    out << text;
    out.flush();
    if (!out) throw InputError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InputError("cannot move output into place at '" + path.string() + "'");
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

const json& InputSet::load(const fs::path& path) {
  files_.push_back(read_json_file(path));
  return files_.back().content;
}

SymmetricMatrix InputSet::matrix(const json& ref, const fs::path& base_dir, const std::string& where) {
  if (ref.is_string()) {
    const fs::path p = base_dir / ref.get<std::string>();
    return matrix_from_json(load(p), p.string());
  }
  return matrix_from_json(ref, where);
}

json InputSet::to_json() const {
  json out = json::array();
  for (const auto& f : files_) out.push_back({{"path", f.path.string()}, {"sha256", f.sha256}});
  return out;
}

ConvexSetSpec set_spec_from_json(const json& j, InputSet& inputs, const fs::path& base_dir, const std::string& where) {
  require_object(j, where);
  ConvexSetSpec s;
  s.dimension = index_at(j, "dimension", where);
  if (j.contains("trace_eq") && !j.at("trace_eq").is_null()) s.trace_eq = number_at(j.at("trace_eq"), where_of(where, "trace_eq"));
  auto affine = [&](const char* key, std::vector<AffineConstraint>& out) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_array()) throw InputError(where_of(where, key) + ": expected an array");
    std::size_t k = 0;
    for (const json& c : j.at(key)) {
      const std::string w = where_of(where, key) + "[" + std::to_string(k++) + "]";
      require_object(c, w);
      if (!c.contains("coeff") || !c.contains("rhs")) throw InputError(w + ": needs 'coeff' and 'rhs'");
      out.push_back({inputs.matrix(c.at("coeff"), base_dir, w + ".coeff"), number_at(c.at("rhs"), w + ".rhs")});
    }
  };
  affine("linear_eqs", s.linear_eqs);
  affine("linear_ineqs", s.linear_ineqs);
  if (j.contains("frobenius_ball") && !j.at("frobenius_ball").is_null()) {
    const json& b = j.at("frobenius_ball");
    const std::string w = where_of(where, "frobenius_ball");
    require_object(b, w);
    if (!b.contains("center") || !b.contains("radius")) throw InputError(w + ": needs 'center' and 'radius'");
    s.frobenius_ball = FrobeniusBall{inputs.matrix(b.at("center"), base_dir, w + ".center"), number_at(b.at("radius"), w + ".radius")};
  }
  s.validate();
  return s;
}

json set_spec_to_json(const ConvexSetSpec& s) {
  json out = {{"dimension", s.dimension}};
  if (s.trace_eq) out["trace_eq"] = *s.trace_eq;
  auto affine = [](const std::vector<AffineConstraint>& cs) {
    json a = json::array();
    for (const auto& c : cs) a.push_back({{"coeff", matrix_to_json(c.coeff.matrix())}, {"rhs", c.rhs}});
    return a;
  };
  if (!s.linear_eqs.empty()) out["linear_eqs"] = affine(s.linear_eqs);
  if (!s.linear_ineqs.empty()) out["linear_ineqs"] = affine(s.linear_ineqs);
  if (s.frobenius_ball)
    out["frobenius_ball"] = {{"center", matrix_to_json(s.frobenius_ball->center.matrix())}, {"radius", s.frobenius_ball->radius}};
  return out;
}

BarycenterProblem barycenter_from_json(const json& j, InputSet& inputs, const fs::path& base_dir) {
  require_object(j, "barycenter problem");
  if (!j.contains("weights") || !j.at("weights").is_array()) throw InputError("barycenter problem: missing array 'weights'");
  if (!j.contains("matrices") || !j.at("matrices").is_array()) throw InputError("barycenter problem: missing array 'matrices'");
  BarycenterProblem p;
  for (const json& w : j.at("weights")) p.weights.push_back(number_at(w, "barycenter problem.weights"));
  std::size_t k = 0;
  for (const json& m : j.at("matrices")) {
    const std::string w = "barycenter problem.matrices[" + std::to_string(k++) + "]";
    p.matrices.push_back(PdMatrix::validate(inputs.matrix(m, base_dir, w)));
  }
  if (j.contains("constraints") && !j.at("constraints").is_null())
    p.constraints = set_spec_from_json(j.at("constraints"), inputs, base_dir, "barycenter problem.constraints");
  p.validate();
  return p;
}

std::vector<BwBall> balls_from_json(const json& j, InputSet& inputs, const fs::path& base_dir) {
  const json* list = &j;
  if (j.is_object()) {
    if (!j.contains("balls")) throw InputError("balls file: missing array 'balls'");
    list = &j.at("balls");
  }
  if (!list->is_array() || list->empty()) throw InputError("balls file: expected a non-empty array of balls");
  std::vector<BwBall> balls;
  std::size_t k = 0;
  for (const json& b : *list) {
    const std::string w = "balls[" + std::to_string(k++) + "]";
    require_object(b, w);
    if (!b.contains("center") || !b.contains("radius_squared")) throw InputError(w + ": needs 'center' and 'radius_squared'");
    balls.emplace_back(PdMatrix::validate(inputs.matrix(b.at("center"), base_dir, w + ".center")),
                       number_at(b.at("radius_squared"), w + ".radius_squared"));
  }
  return balls;
}

}  // namespace bwkit::app
