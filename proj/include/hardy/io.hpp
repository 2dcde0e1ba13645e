#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "hardy/interpolation.hpp"

namespace hardy {

using json = nlohmann::json;

// malformed input, as opposed to a mathematical rejection
struct InputError : Error {
  using Error::Error;
};

json to_json(cplx z);
json to_json(const Mat& a);  // {"shape": [r, c], "data": row-major [re, im] pairs}
json to_json(const Vec& v);
// input is well formed but mathematically excluded (not admissible, not CP)
struct Rejection : Error {
  using Error::Error;
};

// residual with the ceiling it is judged against
json annotated(double value, double tol);

cplx parse_cplx(const json& j);
// object form, a bare number or a single [re, im] pair (1 x 1)
Mat parse_mat(const json& j);
Graph parse_graph(const json& j);
std::vector<int> parse_mult(const json& j, const Graph& g);
// {"scalar": [x1, x2, ...]} or {"matrices": {"k": matrix}}
AdmissibleSequence parse_sequence(const json& j, const PathTower& t);

json sequence_json(const AdmissibleSequence& x);
json weights_json(const Weights& w);
// {shape, degree, blocks: {"i,j": matrix}} over nonzero level blocks
json operator_json(const TruncatedFock& f, const Mat& op);

// everything built from (graph, sigma, X, Z?) at truncation N; objects refer to each other
struct ModelBundle {
  PathTower t;
  TruncatedFock f;
  InducedSpace K;
  AdmissibleSequence x;
  Weights w;
  DualCorrespondence es;
  DualFock d;
  DualWeights dw;
  DiscModel m;

  ModelBundle(const Graph& g, const std::vector<int>& mult, int N, const std::function<AdmissibleSequence(const PathTower&)>& seq,
              const std::optional<std::vector<Mat>>& Z = std::nullopt);
  ModelBundle(const ModelBundle&) = delete;
  ModelBundle& operator=(const ModelBundle&) = delete;
};

// reads graph, sigma, X, Z from an input document; N overrides the document when positive
std::unique_ptr<ModelBundle> bundle_from_json(const json& j, int N);
PickProblem pick_from_json(const json& j, const DiscModel& m);

}  // namespace hardy
