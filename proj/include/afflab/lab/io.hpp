#pragma once

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "afflab/error.hpp"
#include "afflab/lab/generators.hpp"
#include "afflab/operator.hpp"
#include "afflab/order.hpp"
#include "afflab/partition.hpp"
#include "afflab/shape.hpp"

// JSON formats. Complex numbers are [re, im] pairs, fibers are flat
// row-major lists of them, and operators list fibers block by block.
namespace afflab::io {

using Json = nlohmann::json;

namespace detail {

[[noreturn]] inline void malformed(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::MalformedInput, where + ": " + what);
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) malformed(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) malformed(where, std::string("missing field '") + key + "'");
  return *it;
}

inline double number(const Json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      std::size_t used = 0;
      const auto s = j.get<std::string>();
      const double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  malformed(where, "expected a number");
}

inline std::size_t count(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    malformed(where, "expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

}  // namespace detail

inline Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

inline Complex complex_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) detail::malformed(where, "expected an [re, im] pair");
  return {detail::number(j[0], where + "/0"), detail::number(j[1], where + "/1")};
}

inline Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(complex_to_json(m(i, j)));
  return out;
}

inline Matrix matrix_from_json(const Json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array() || j.size() != dim * dim) {
    detail::malformed(where, "expected " + std::to_string(dim * dim) + " entries");
  }
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto idx = static_cast<std::size_t>(i * n + c);
      m(i, c) = complex_from_json(j[idx], where + "/" + std::to_string(idx));
    }
  return m;
}

// ---- shape ----

inline Json shape_to_json(const AlgebraShape& s) {
  Json blocks = Json::array();
  for (const auto& b : s.blocks()) blocks.push_back({{"w", b.weight}, {"dim", b.dim}});
  Json out = {{"blocks", blocks}};
  if (s.tail()) out["tail"] = {{"dim", s.tail()->dim}, {"ratio", s.tail()->ratio}, {"w", s.tail()->seed_weight}};
  return out;
}

inline ShapePtr shape_from_json(const Json& j, const std::string& where = "/shape") {
  const auto& blocks = detail::field(j, "blocks", where);
  if (!blocks.is_array()) detail::malformed(where + "/blocks", "expected an array");
  std::vector<BlockShape> out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const std::string w = where + "/blocks/" + std::to_string(i);
    out.push_back({detail::number(detail::field(blocks[i], "w", w), w + "/w"),
                   detail::count(detail::field(blocks[i], "dim", w), w + "/dim")});
  }
  std::optional<ShapeTail> tail;
  if (j.contains("tail") && !j["tail"].is_null()) {
    const auto& t = j["tail"];
    const std::string w = where + "/tail";
    tail = ShapeTail{detail::count(detail::field(t, "dim", w), w + "/dim"),
                     detail::number(detail::field(t, "ratio", w), w + "/ratio"),
                     t.contains("w") ? detail::number(t["w"], w + "/w") : 0.0};
  }
  try {
    return make_shape(std::move(out), tail);
  } catch (const Error& e) {
    detail::malformed(where, e.what());
  }
}

// ---- operators ----

/// Explicit fibers up to the tail start (or the whole horizon / finite
/// algebra when there is no tail) followed by the tail coefficients.
inline Json operator_to_json(const AffiliatedOperator& t, std::size_t horizon = 64) {
  const auto& shape = t.shape();
  std::size_t explicit_end = 0;
  if (t.tail()) {
    explicit_end = t.tail()->start;
  } else if (shape.block_count()) {
    explicit_end = *shape.block_count();
  } else {
    explicit_end = horizon;
  }
  Json prefix = Json::array();
  for (std::size_t k = 0; k < explicit_end; ++k) prefix.push_back(matrix_to_json(t.fiber(k)));
  Json out = {{"prefix", prefix}};
  if (t.tail()) {
    Json coeffs = Json::array();
    for (const auto& c : t.tail()->coeffs) coeffs.push_back(matrix_to_json(c));
    out["tail"] = {{"degree", t.tail()->coeffs.size() - 1}, {"coeffs", coeffs}};
  }
  return out;
}

inline AffiliatedOperator operator_from_json(const ShapePtr& shape, const Json& j,
                                             const std::string& where = "/operator") {
  const auto& prefix = detail::field(j, "prefix", where);
  if (!prefix.is_array()) detail::malformed(where + "/prefix", "expected an array");
  std::vector<Matrix> fibers;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    if (!shape->contains(k)) detail::malformed(where + "/prefix", "more fibers than blocks");
    fibers.push_back(matrix_from_json(prefix[k], shape->dim(k), where + "/prefix/" + std::to_string(k)));
  }
  std::optional<MatrixTail> tail;
  if (j.contains("tail") && !j["tail"].is_null()) {
    const std::string w = where + "/tail";
    const auto& t = j["tail"];
    const std::size_t degree = detail::count(detail::field(t, "degree", w), w + "/degree");
    const auto& coeffs = detail::field(t, "coeffs", w);
    if (!coeffs.is_array() || coeffs.size() != degree + 1) detail::malformed(w + "/coeffs", "expected degree + 1 coefficients");
    if (!shape->tail()) detail::malformed(w, "tail on an algebra without a tail");
    MatrixTail mt{fibers.size(), {}};
    for (std::size_t p = 0; p <= degree; ++p) {
      mt.coeffs.push_back(matrix_from_json(coeffs[p], shape->tail()->dim, w + "/coeffs/" + std::to_string(p)));
    }
    tail = std::move(mt);
  }
  try {
    return AffiliatedOperator::from_prefix(shape, std::move(fibers), std::move(tail));
  } catch (const Error& e) {
    detail::malformed(where, e.what());
  }
}

inline Json central_to_json(const CentralElement& z, std::size_t horizon = 64) {
  const auto& shape = z.shape();
  std::size_t explicit_end = z.tail() ? z.tail()->start : shape.horizon_end(horizon);
  if (!z.tail() && shape.block_count()) explicit_end = *shape.block_count();
  Json prefix = Json::array();
  for (std::size_t k = 0; k < explicit_end; ++k) prefix.push_back(complex_to_json(z.value(k)));
  Json out = {{"prefix", prefix}};
  if (z.tail()) {
    Json coeffs = Json::array();
    for (const auto& c : z.tail()->coeffs) coeffs.push_back(complex_to_json(c));
    out["tail"] = {{"degree", z.tail()->coeffs.size() - 1}, {"coeffs", coeffs}};
  }
  return out;
}

inline CentralElement central_from_json(const ShapePtr& shape, const Json& j, const std::string& where = "/central") {
  const auto& prefix = detail::field(j, "prefix", where);
  if (!prefix.is_array()) detail::malformed(where + "/prefix", "expected an array");
  std::vector<Complex> values;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    values.push_back(complex_from_json(prefix[k], where + "/prefix/" + std::to_string(k)));
  }
  std::optional<ScalarTail> tail;
  if (j.contains("tail") && !j["tail"].is_null()) {
    const std::string w = where + "/tail";
    const std::size_t degree = detail::count(detail::field(j["tail"], "degree", w), w + "/degree");
    const auto& coeffs = detail::field(j["tail"], "coeffs", w);
    if (!coeffs.is_array() || coeffs.size() != degree + 1) detail::malformed(w + "/coeffs", "expected degree + 1 coefficients");
    ScalarTail st{values.size(), {}};
    for (std::size_t p = 0; p <= degree; ++p) st.coeffs.push_back(complex_from_json(coeffs[p], w + "/coeffs/" + std::to_string(p)));
    tail = std::move(st);
  }
  try {
    return CentralElement::from_prefix(shape, std::move(values), std::move(tail));
  } catch (const Error& e) {
    detail::malformed(where, e.what());
  }
}

// ---- partitions ----

inline Json partition_to_json(const CentralPartition& p, std::size_t horizon = 64) {
  Json labels = Json::array();
  const std::size_t end = p.shape().horizon_end(horizon);
  for (std::size_t k = 0; k < end; ++k) labels.push_back(p.label(k));
  Json rule = {{"kind", p.rule().kind}};
  if (p.rule().kind == "by_norm") rule["thresholds"] = p.rule().thresholds;
  if (p.rule().kind == "constant") rule["label"] = p.rule().constant_label;
  return {{"labels_prefix", labels}, {"tail_rule", rule}};
}

/// Labels past the prefix follow the tail rule: "constant" repeats its
/// label; "by_norm" re-buckets the fibers of `by_norm_source` with the named
/// thresholds ("dyadic" or "natural", the latter meaning a_n = n / (1 + n)).
inline CentralPartition partition_from_json(const ShapePtr& shape, const Json& j,
                                            const std::optional<BoundedElement>& by_norm_source = std::nullopt,
                                            const ToleranceConfig& cfg = {}, const std::string& where = "/partition") {
  const auto& labels = detail::field(j, "labels_prefix", where);
  if (!labels.is_array()) detail::malformed(where + "/labels_prefix", "expected an array");
  std::vector<Label> prefix;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    prefix.push_back(detail::count(labels[i], where + "/labels_prefix/" + std::to_string(i)));
  }
  const auto& rule = detail::field(j, "tail_rule", where);
  const auto kind = detail::field(rule, "kind", where + "/tail_rule").get<std::string>();
  if (kind == "constant") {
    const Label rest = detail::count(detail::field(rule, "label", where + "/tail_rule"), where + "/tail_rule/label");
    return CentralPartition::from_labels(shape, std::move(prefix), rest);
  }
  if (kind == "by_norm") {
    const auto name = detail::field(rule, "thresholds", where + "/tail_rule").get<std::string>();
    Thresholds th;
    if (name == "dyadic") {
      th = Thresholds::dyadic();
    } else if (name == "natural") {
      th = Coefficients::natural().thresholds();
    } else {
      detail::malformed(where + "/tail_rule/thresholds", "unknown thresholds '" + name + "'");
    }
    if (!by_norm_source) {
      auto data = std::make_shared<const std::vector<Label>>(std::move(prefix));
      return CentralPartition(
          shape,
          [data](std::size_t k) -> Label {
            if (k < data->size()) return (*data)[k];
            throw Error(ErrorKind::OutOfRange, "by_norm labels past the prefix need the source operator", k);
          },
          PartitionRule{"by_norm", name, 0});
    }
    auto fresh = strict_contraction_partition(*by_norm_source, th, cfg);
    auto data = std::make_shared<const std::vector<Label>>(std::move(prefix));
    return CentralPartition(
        shape, [data, fresh](std::size_t k) { return k < data->size() ? (*data)[k] : fresh.label(k); },
        PartitionRule{"by_norm", name, 0});
  }
  detail::malformed(where + "/tail_rule/kind", "unsupported tail rule '" + kind + "'");
}

// ---- decompositions ----

/// {"partition": ..., "coeffs": "natural", "base": operator}
inline Json representation_to_json(const SeriesRepresentation& rep, std::size_t horizon = 64) {
  const auto* cs = std::get_if<CoefficientSeries>(&rep.data);
  if (!cs) throw Error(ErrorKind::InvalidArgument, "only coefficient series are serializable");
  return {{"partition", partition_to_json(rep.partition, horizon)},
          {"coeffs", cs->coeffs.name},
          {"base", operator_to_json(cs->base.op().without_tail(), horizon)}};
}

// ---- chains ----

inline Json chain_to_json(const OperatorChain& c, std::size_t horizon = 64) {
  const auto& rule = c.rule();
  if (rule.kind != "geometric_approach" && rule.kind != "truncation") {
    throw Error(ErrorKind::InvalidArgument, "only geometric_approach and truncation chains are serializable");
  }
  Json prefix = Json::array();
  for (const auto& t : rule.prefix) prefix.push_back(operator_to_json(t, horizon));
  Json tail = {{"kind", rule.kind}};
  tail[rule.kind == "truncation" ? "target" : "bound"] = operator_to_json(*rule.target, horizon);
  return {{"prefix_terms", prefix}, {"tail_rule", tail}, {"declared_bound", operator_to_json(c.declared_bound(), horizon)}};
}

inline OperatorChain chain_from_json(const ShapePtr& shape, const Json& j, const std::string& where = "/chain") {
  const auto& pre = detail::field(j, "prefix_terms", where);
  if (!pre.is_array()) detail::malformed(where + "/prefix_terms", "expected an array");
  std::vector<AffiliatedOperator> prefix;
  for (std::size_t i = 0; i < pre.size(); ++i) {
    prefix.push_back(operator_from_json(shape, pre[i], where + "/prefix_terms/" + std::to_string(i)));
  }
  auto bound = operator_from_json(shape, detail::field(j, "declared_bound", where), where + "/declared_bound");
  const auto& tail = detail::field(j, "tail_rule", where);
  const auto kind = detail::field(tail, "kind", where + "/tail_rule").get<std::string>();
  if (kind == "geometric_approach") {
    auto limit = operator_from_json(shape, detail::field(tail, "bound", where + "/tail_rule"), where + "/tail_rule/bound");
    return OperatorChain::geometric_approach(std::move(prefix), std::move(limit), std::move(bound));
  }
  if (kind == "truncation") {
    auto target = operator_from_json(shape, detail::field(tail, "target", where + "/tail_rule"), where + "/tail_rule/target");
    return OperatorChain::truncation(std::move(prefix), std::move(target), std::move(bound));
  }
  detail::malformed(where + "/tail_rule/kind", "unsupported chain rule '" + kind + "'");
}

// ---- documents ----

/// Parses text, reporting syntax errors with their byte offset.
inline Json parse(const std::string& text, const std::string& source = "input") {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::MalformedInput, source + " at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MalformedInput, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

inline void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::MalformedInput, "cannot write " + path);
  out << j.dump(2) << '\n';
}

/// Canonical text form: two-space indentation, sorted keys, trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// A document {"shape": ..., "operator" | "central" | "chain": ...}.
struct Document {
  ShapePtr shape;
  std::optional<AffiliatedOperator> op;
  std::optional<CentralElement> central;
  std::optional<OperatorChain> chain;
};

inline Json document_to_json(const Document& d, std::size_t horizon = 64) {
  Json out = {{"shape", shape_to_json(*d.shape)}};
  if (d.op) out["operator"] = operator_to_json(*d.op, horizon);
  if (d.central) out["central"] = central_to_json(*d.central, horizon);
  if (d.chain) out["chain"] = chain_to_json(*d.chain, horizon);
  return out;
}

inline Document document_from_json(const Json& j) {
  Document d;
  try {
    d.shape = shape_from_json(detail::field(j, "shape", ""), "/shape");
    if (j.contains("operator")) d.op = operator_from_json(d.shape, j["operator"]);
    if (j.contains("central")) d.central = central_from_json(d.shape, j["central"]);
    if (j.contains("chain")) d.chain = chain_from_json(d.shape, j["chain"]);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::MalformedInput, std::string("wrong value type: ") + e.what());
  }
  return d;
}

// ---- generator profiles ----

/// {"seed": 42, "shape": {"blocks": 4, "dim_min": 1, "dim_max": 3,
///  "weights": "uniform", "tail": {"dim": 2, "ratio": 0.5}},
///  "operator": {"kind": "psd", "norm": 1.0, "degree": 1}}
inline lab::GeneratorProfile profile_from_json(const Json& j) {
  lab::GeneratorProfile p;
  auto fail = [](const std::string& where, const std::string& what) -> void {
    throw Error(ErrorKind::InvalidProfile, where + ": " + what);
  };
  if (!j.is_object()) fail("/", "expected an object");
  try {
    if (j.contains("seed")) p.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("shape")) {
      const auto& s = j["shape"];
      if (s.contains("blocks")) p.shape.block_count = s["blocks"].get<std::size_t>();
      if (s.contains("dim_min")) p.shape.dim_min = s["dim_min"].get<std::size_t>();
      if (s.contains("dim_max")) p.shape.dim_max = s["dim_max"].get<std::size_t>();
      if (s.contains("weights")) {
        const auto w = s["weights"].get<std::string>();
        if (w == "uniform") p.shape.weights = lab::WeightScheme::uniform;
        else if (w == "geometric") p.shape.weights = lab::WeightScheme::geometric;
        else if (w == "random") p.shape.weights = lab::WeightScheme::random;
        else fail("/shape/weights", "unknown scheme '" + w + "'");
      }
      if (s.contains("tail") && !s["tail"].is_null()) {
        p.shape.tail = lab::TailParams{s["tail"].value("dim", std::size_t{1}), s["tail"].value("ratio", 0.5)};
      }
    }
    if (j.contains("operator")) {
      const auto& o = j["operator"];
      if (o.contains("kind")) p.op.kind = lab::operator_kind_from_string(o["kind"].get<std::string>());
      if (o.contains("norm")) p.op.norm = o["norm"].get<double>();
      if (o.contains("degree")) p.op.degree = o["degree"].get<std::size_t>();
    }
  } catch (const Json::exception& e) {
    fail("/", e.what());
  }
  p.validate();
  return p;
}

}  // namespace afflab::io
