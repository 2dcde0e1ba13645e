#include "hardy/io.hpp"

#include <cmath>

namespace hardy {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int as_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw InputError(what + ": expected an integer");
  return j.get<int>();
}

double as_double(const json& j, const std::string& what) {
  if (!j.is_number()) throw InputError(what + ": expected a number");
  return j.get<double>();
}

}  // namespace

json to_json(cplx z) {
  // NaN would serialize as null; keep the pair shape either way
  return json::array({z.real(), z.imag()});
}

json to_json(const Mat& a) {
  json data = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) data.push_back(to_json(a(i, j)));
  return {{"shape", {a.rows(), a.cols()}}, {"data", data}};
}

json to_json(const Vec& v) {
  json data = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) data.push_back(to_json(v(i)));
  return data;
}

json annotated(double value, double tol) { return {{"value", value}, {"tol", tol}, {"ok", value <= tol}}; }

cplx parse_cplx(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InputError("complex number must be a number or an [re, im] pair");
}

Mat parse_mat(const json& j) {
  if (j.is_number() || (j.is_array() && j.size() == 2 && j[0].is_number())) return Mat::Constant(1, 1, parse_cplx(j));
  const json& shape = field(j, "shape");
  const json& data = field(j, "data");
  if (!shape.is_array() || shape.size() != 2) throw InputError("matrix shape must be [rows, cols]");
  const int r = as_int(shape[0], "matrix rows"), c = as_int(shape[1], "matrix cols");
  if (r < 0 || c < 0) throw InputError("matrix shape must be nonnegative");
  if (!data.is_array() || static_cast<long>(data.size()) != static_cast<long>(r) * c)
    throw InputError("matrix data must hold rows * cols entries");
  Mat a(r, c);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < c; ++k) a(i, k) = parse_cplx(data[i * c + k]);
  return a;
}

Graph parse_graph(const json& j) {
  const int n = as_int(field(j, "vertices"), "vertices");
  const json& edges = field(j, "edges");
  if (!edges.is_array()) throw InputError("edges must be an array of [source, range] pairs");
  std::vector<std::pair<int, int>> e;
  for (const auto& p : edges) {
    if (!p.is_array() || p.size() != 2) throw InputError("edges must be an array of [source, range] pairs");
    e.emplace_back(as_int(p[0], "edge source"), as_int(p[1], "edge range"));
  }
  return Graph::make(n, e);
}

std::vector<int> parse_mult(const json& j, const Graph& g) {
  if (!j.is_array()) throw InputError("sigma must be a multiplicity list");
  std::vector<int> m;
  for (const auto& v : j) m.push_back(as_int(v, "multiplicity"));
  if (static_cast<int>(m.size()) != g.n) throw InputError("sigma: need one multiplicity per vertex");
  return m;
}

AdmissibleSequence parse_sequence(const json& j, const PathTower& t) {
  if (j.is_object() && j.contains("scalar")) {
    const json& s = j.at("scalar");
    if (!s.is_array()) throw InputError("X.scalar must be an array");
    std::vector<double> x{0.0};
    for (const auto& v : s) x.push_back(as_double(v, "x_k"));
    return AdmissibleSequence::from_scalar(t, x);
  }
  if (j.is_object() && j.contains("matrices")) {
    const json& ms = j.at("matrices");
    if (!ms.is_object()) throw InputError("X.matrices must map levels to matrices");
    std::vector<Mat> x(t.N() + 1);
    for (int k = 0; k <= t.N(); ++k) x[k] = Mat::Zero(t.size(k), t.size(k));
    for (const auto& [key, val] : ms.items()) {
      int k = 0;
      try {
        k = std::stoi(key);
      } catch (const std::exception&) {
        throw InputError("X.matrices: level key \"" + key + "\" is not an integer");
      }
      if (k < 1) throw InputError("X.matrices: levels start at 1");
      if (k <= t.N()) x[k] = parse_mat(val);
    }
    return AdmissibleSequence::from_matrices(t, x);
  }
  throw InputError("X must hold \"scalar\" or \"matrices\"");
}

json sequence_json(const AdmissibleSequence& x) {
  if (x.is_scalar()) {
    json s = json::array();
    for (int k = 1; k <= x.N; ++k) s.push_back(k < static_cast<int>(x.scalar.size()) ? x.scalar[k] : 0.0);
    return {{"scalar", s}};
  }
  json ms = json::object();
  for (int k = 1; k <= x.N; ++k) ms[std::to_string(k)] = to_json(x.X[k]);
  return {{"matrices", ms}};
}

json weights_json(const Weights& w) {
  json r = json::object(), z = json::object(), zp = json::object();
  for (int k = 0; k <= w.N(); ++k) {
    r[std::to_string(k)] = to_json(w.R[k]);
    zp[std::to_string(k)] = to_json(w.Zp[k]);
    if (k >= 1) z[std::to_string(k)] = to_json(w.Z[k]);
  }
  return {{"R", r}, {"Z", z}, {"Z_product", zp}};
}

json operator_json(const TruncatedFock& f, const Mat& op) {
  json blocks = json::object();
  for (int i = 0; i <= f.N(); ++i)
    for (int j = 0; j <= f.N(); ++j) {
      Mat b = f.block(op, i, j);
      if (b.size() && b.cwiseAbs().maxCoeff() > 0.0) blocks[std::to_string(i) + "," + std::to_string(j)] = to_json(b);
    }
  const int deg = operator_degree(f, op);
  return {{"shape", {op.rows(), op.cols()}},
          {"degree", deg == kMixedDegree ? json(nullptr) : json(deg)},
          {"blocks", blocks}};
}

ModelBundle::ModelBundle(const Graph& g, const std::vector<int>& mult, int N,
                         const std::function<AdmissibleSequence(const PathTower&)>& seq,
                         const std::optional<std::vector<Mat>>& Z)
    : t(g, N),
      f(t),
      K(t, Representation::make(g, mult)),
      x(seq(t)),
      w(Z ? weights_from_Z(t, x, *Z) : canonical_weights(t, x)),
      es(intertwiner_basis(K)),
      d(K, es),
      dw(dual_weights(d, w, x)),
      m(K, x, w) {}

std::unique_ptr<ModelBundle> bundle_from_json(const json& j, int N) {
  if (N <= 0) N = j.contains("N") ? as_int(j.at("N"), "N") : 6;
  if (N < 1) throw InputError("N must be at least 1");
  Graph g = parse_graph(field(j, "graph"));
  std::vector<int> mult = j.contains("sigma") ? parse_mult(j.at("sigma"), g) : std::vector<int>(g.n, 1);
  const json xj = field(j, "X");
  auto seq = [&](const PathTower& t) {
    AdmissibleSequence x = parse_sequence(xj, t);
    try {
      x.validate(t);
    } catch (const Error& e) {
      throw Rejection(std::string("X not admissible: ") + e.what());
    }
    return x;
  };
  std::optional<std::vector<Mat>> Z;
  if (j.contains("Z")) {
    const json& zj = j.at("Z");
    if (!zj.is_array()) throw InputError("Z must be a list of matrices Z_1, Z_2, ...");
    std::vector<Mat> z{Mat()};
    for (const auto& v : zj) z.push_back(parse_mat(v));
    Z = z;
  }
  return std::make_unique<ModelBundle>(g, mult, N, seq, Z);
}

PickProblem pick_from_json(const json& j, const DiscModel& m) {
  PickProblem p;
  p.s = j.contains("s") ? as_int(j.at("s"), "s") : 1;
  p.t = j.contains("t") ? as_int(j.at("t"), "t") : 1;
  const json& pts = field(j, "points");
  const json& B = field(j, "B");
  const json& F = field(j, "F");
  if (!pts.is_array() || !B.is_array() || !F.is_array()) throw InputError("points, B, F must be arrays");
  if (pts.size() != B.size() || pts.size() != F.size()) throw InputError("points, B, F must have equal length");
  for (size_t i = 0; i < pts.size(); ++i) {
    p.points.push_back(make_point(m, parse_mat(pts[i])));
    p.B.push_back(parse_mat(B[i]));
    p.F.push_back(parse_mat(F[i]));
  }
  p.validate(m.dim_h());
  return p;
}

}  // namespace hardy
