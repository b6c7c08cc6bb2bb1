#include "ihlab/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "ihlab/errors.hpp"
#include "ihlab/verbitsky.hpp"

namespace ihlab {

namespace {

using json = nlohmann::ordered_json;

mpq_class rational_from(const json& e, const std::string& what) {
  if (e.is_string()) return parse_rational(e.get<std::string>());
  if (e.is_number_integer()) return mpq_class(static_cast<long>(e.get<std::int64_t>()));
  throw InputError(what + ": expected a rational string \"p/q\" or an integer");
}

RationalVector vector_from(const json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": expected an array");
  RationalVector v;
  for (const auto& e : j) v.push_back(rational_from(e, what));
  return v;
}

Matrix<mpq_class> matrix_from(const json& j, std::size_t rows, std::size_t cols, const std::string& what) {
  if (!j.is_array() || j.size() != rows)
    throw InputError(what + ": expected " + std::to_string(rows) + " rows");
  Matrix<mpq_class> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw InputError(what + ": row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational_from(j[r][c], what);
  }
  return m;
}

json vector_json(const RationalVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(format_rational(x));
  return a;
}

json matrix_json(const Matrix<mpq_class>& m) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(format_rational(m(r, c)));
    a.push_back(std::move(row));
  }
  return a;
}

}  // namespace

std::string format_vector(const RationalVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_rational(v[i]);
  return s;
}

RationalVector parse_class(const std::string& csv) {
  RationalVector v;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw InputError("empty entry in class list '" + csv + "'");
    v.push_back(parse_rational(item.substr(b, e - b + 1)));
  }
  if (v.empty()) throw InputError("empty class list");
  return v;
}

ModelFile parse_model(const std::string& text, std::uint64_t seed) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("model file: ") + e.what());
  }
  if (!j.is_object()) throw InputError("model file: expected a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<int>() < 1)
    throw InputError("model file: 'n' must be a positive integer");
  if (!j.contains("gram")) throw InputError("model file: missing 'gram'");

  ModelFile out;
  out.digest = sha256_hex(text);
  const int n = j["n"].get<int>();
  QuadraticLattice lattice = lattice_from_json_text(text);
  if (j.contains("b2") && (!j["b2"].is_number_unsigned() || j["b2"].get<std::size_t>() != lattice.b2()))
    throw InputError("model file: 'b2' does not match the Gram matrix size " + std::to_string(lattice.b2()));

  std::optional<HodgeMarking> marking;
  if (j.contains("hodge_marking") && !j["hodge_marking"].is_null()) {
    const auto& hm = j["hodge_marking"];
    if (!hm.contains("sigma") || !hm.contains("sigmabar"))
      throw InputError("model file: hodge_marking needs 'sigma' and 'sigmabar'");
    marking = HodgeMarking{vector_from(hm["sigma"], "hodge_marking.sigma"),
                           vector_from(hm["sigmabar"], "hodge_marking.sigmabar")};
    check_marking(lattice, *marking);
  }

  GradedAlgebraModel& m = out.model;
  if (j.contains("full_algebra") && !j["full_algebra"].is_null()) {
    const auto& fa = j["full_algebra"];
    if (fa.contains("odd_dims")) {
      for (const auto& d : fa["odd_dims"])
        if (!d.is_number_integer() || d.get<long>() != 0)
          throw InputError("model file: odd cohomology is not supported");
    }
    if (!fa.contains("dims") || !fa["dims"].is_array()) throw InputError("full_algebra: missing 'dims'");
    m.n = n;
    m.lattice = lattice;
    for (const auto& d : fa["dims"]) {
      if (!d.is_number_unsigned()) throw InputError("full_algebra.dims: expected nonnegative integers");
      m.dims.push_back(d.get<std::size_t>());
    }
    const std::size_t top = m.top();
    if (m.dims.size() != top + 1)
      throw InputError("full_algebra.dims: expected " + std::to_string(top + 1) + " entries (degrees 0..4n)");
    const auto& act = fa.at("h2_action");
    if (!act.is_array() || act.size() != lattice.b2())
      throw InputError("full_algebra.h2_action: expected one entry per degree-2 basis vector");
    for (std::size_t i = 0; i < act.size(); ++i) {
      if (!act[i].is_array() || act[i].size() != top)
        throw InputError("full_algebra.h2_action[" + std::to_string(i) + "]: expected " + std::to_string(top) +
                         " blocks");
      std::vector<Matrix<mpq_class>> blocks;
      for (std::size_t k = 0; k < top; ++k)
        blocks.push_back(matrix_from(act[i][k], m.dims[k], m.dims[k + 1],
                                     "full_algebra.h2_action[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
      m.h2_action.push_back(std::move(blocks));
    }
    m.integral = vector_from(fa.at("integral"), "full_algebra.integral");
    if (m.integral.size() != m.dims[top]) throw InputError("full_algebra.integral: length must equal dims[4n]");
    out.builder_output = j.value("construction", std::string{}) == "sh";
  } else {
    m = build_sh(lattice, n, seed);
    out.builder_output = true;
  }
  m.name = j.value("name", std::string("model"));
  if (marking) m.marking = marking;
  return out;
}

ModelFile load_model(const std::string& path, std::uint64_t seed) { return parse_model(read_file(path), seed); }

std::string model_to_json(const GradedAlgebraModel& model, bool builder_output) {
  json j;
  j["name"] = model.name;
  j["n"] = model.n;
  j["b2"] = model.b2();
  j["gram"] = matrix_json(model.lattice.gram());
  if (auto hp = model.lattice.hyperbolic_pair()) j["hyperbolic_pair"] = {hp->first, hp->second};
  if (model.marking)
    j["hodge_marking"] = {{"sigma", vector_json(model.marking->sigma)},
                          {"sigmabar", vector_json(model.marking->sigmabar)}};
  if (builder_output) j["construction"] = "sh";
  json fa;
  fa["dims"] = model.dims;
  json act = json::array();
  for (const auto& blocks : model.h2_action) {
    json per = json::array();
    for (const auto& b : blocks) per.push_back(matrix_json(b));
    act.push_back(std::move(per));
  }
  fa["h2_action"] = std::move(act);
  fa["integral"] = vector_json(model.integral);
  j["full_algebra"] = std::move(fa);
  return j.dump() + "\n";
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw InputError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw InputError("cannot move report into place at '" + path + "': " + ec.message());
  }
}

std::string render_diamond(const NumberTable& table, const std::string& title) {
  const std::size_t m = table.size() - 1;
  std::size_t width = 1;
  for (const auto& row : table)
    for (auto v : row) width = std::max(width, std::to_string(v).size());
  const std::size_t cell = width + 2 + (width % 2);
  std::ostringstream os;
  os << title << "\n";
  for (std::size_t dd = 0; dd <= 2 * m; ++dd) {
    const std::size_t d = 2 * m - dd;
    const std::size_t offset = d > m ? d - m : m - d;
    std::string line(offset * cell / 2, ' ');
    const std::size_t lo = d > m ? d - m : 0, hi = std::min(d, m);
    for (std::size_t i = hi + 1; i-- > lo;) {
      std::string v = std::to_string(table[i][d - i]);
      const std::size_t pad = cell - v.size();
      line += std::string(pad / 2, ' ') + v + std::string(pad - pad / 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << "\n";
  }
  return os.str();
}

}  // namespace ihlab
