#pragma once

#include <deque>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "bwkit/barycenter.hpp"
#include "bwkit/bw_programs.hpp"
#include "bwkit/convex_set.hpp"
#include "bwkit/matrix_core.hpp"

namespace bwkit::app {

using nlohmann::json;
namespace fs = std::filesystem;

/// {"rows": n, "cols": n, "entries": [[...], ...], "name": "..."}
json matrix_to_json(const Matrix& m, const std::string& name = {});
/// Parses a MatrixFile object. Entries are symmetrized with the file-input
/// asymmetry tolerance. Throws InputError / AsymmetryError.
SymmetricMatrix matrix_from_json(const json& j, const std::string& where);

/// A file that has been read once, with its content hash.
struct InputFile {
  fs::path path;
  std::string sha256;
  json content;
};

/// Reads and parses a JSON file. Throws InputError on I/O or syntax errors.
InputFile read_json_file(const fs::path& path);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

/// Writes `text` to `path` through a temporary file in the same directory and
/// a rename, so readers never see a partial file.
void write_atomically(const fs::path& path, const std::string& text);

/// Serialized form used for every file this tool writes.
std::string dump(const json& j);

/// Keeps track of every file an input references so reports can list them.
class InputSet {
 public:
  /// Loads a file relative to the working directory.
  const json& load(const fs::path& path);
  /// Resolves a matrix reference: either an inline MatrixFile object or a
  /// path string, taken relative to `base_dir`.
  SymmetricMatrix matrix(const json& ref, const fs::path& base_dir, const std::string& where);

  json to_json() const;

 private:
  std::deque<InputFile> files_;  // stable references across load()
};

/// ConvexSetSpec file:
///   {"dimension": n, "trace_eq": c,
///    "linear_eqs": [{"coeff": <matrix>, "rhs": c}], "linear_ineqs": [...],
///    "frobenius_ball": {"center": <matrix>, "radius": r}}
ConvexSetSpec set_spec_from_json(const json& j, InputSet& inputs, const fs::path& base_dir, const std::string& where);
json set_spec_to_json(const ConvexSetSpec& s);

/// {"weights": [...], "matrices": [<matrix>, ...], "constraints": <set spec>}
BarycenterProblem barycenter_from_json(const json& j, InputSet& inputs, const fs::path& base_dir);

/// {"balls": [{"center": <matrix>, "radius_squared": d2}, ...]} or the bare array.
std::vector<BwBall> balls_from_json(const json& j, InputSet& inputs, const fs::path& base_dir);

}  // namespace bwkit::app
