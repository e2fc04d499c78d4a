#include "gkd/codec.hpp"

#include "gkd/components.hpp"
#include "gkd/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>

namespace gkd {

namespace {

double uniform53(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> pmf_or_point_mass(std::vector<double> pmf) {
  // Contexts that can never occur still need a well-formed table.
  for (double v : pmf)
    if (v > 0.0) return pmf;
  pmf[0] = 1.0;
  return pmf;
}

CodingTable conditional_table(const ProbVector& marginal, const std::vector<int>& phi,
                              int label, double mass) {
  std::vector<double> pmf(marginal.size(), 0.0);
  if (mass > 0.0)
    for (std::size_t i = 0; i < marginal.size(); ++i)
      if (phi[i] == label) pmf[i] = marginal[i] / mass;
  return make_coding_table(pmf_or_point_mass(std::move(pmf)));
}

std::vector<double> label_masses(const ProbVector& marginal, const std::vector<int>& phi,
                                 int range_size) {
  std::vector<double> mass(range_size, 0.0);
  for (std::size_t i = 0; i < phi.size(); ++i) mass[phi[i]] += marginal[i];
  return mass;
}

std::vector<int> to_int(const std::vector<std::int32_t>& v) {
  return std::vector<int>(v.begin(), v.end());
}

std::vector<int> apply_phi(const std::vector<int>& phi,
                           const std::vector<std::int32_t>& seq) {
  std::vector<int> out(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) out[i] = phi[seq[i]];
  return out;
}

Stream make_stream(std::string name, std::vector<std::uint8_t> bytes) {
  Stream s;
  s.name = std::move(name);
  s.bit_length = 8ull * bytes.size();
  s.bytes = std::move(bytes);
  return s;
}

}  // namespace

SampleBlock sample(const JointDistribution& j, std::uint64_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample: n must be >= 1");
  std::vector<std::int32_t> cell_x, cell_y;
  std::vector<double> cum;
  double acc = 0.0;
  for (int i = 0; i < j.nx(); ++i)
    for (int jj = 0; jj < j.ny(); ++jj)
      if (j.p(i, jj) > 0.0) {
        acc += j.p(i, jj);
        cell_x.push_back(i);
        cell_y.push_back(jj);
        cum.push_back(acc);
      }

  SampleBlock block;
  block.n = n;
  block.seed = seed;
  block.x_seq.resize(n);
  block.y_seq.resize(n);
  std::mt19937_64 rng(seed);
  for (std::uint64_t t = 0; t < n; ++t) {
    const double u = uniform53(rng) * acc;
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    const std::size_t idx = std::min<std::size_t>(it - cum.begin(), cum.size() - 1);
    block.x_seq[t] = cell_x[idx];
    block.y_seq[t] = cell_y[idx];
  }
  return block;
}

std::vector<std::uint8_t> encode_entropy(const std::vector<int>& seq,
                                         const std::vector<int>& contexts,
                                         const std::vector<CodingTable>& models) {
  if (!contexts.empty() && contexts.size() != seq.size())
    throw std::invalid_argument("encode_entropy: context/sequence size mismatch");
  RangeEncoder enc;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const CodingTable& t = models[contexts.empty() ? 0 : contexts[i]];
    encode_symbol(enc, t, seq[i]);
  }
  return enc.finish();
}

std::vector<int> decode_entropy(const std::vector<std::uint8_t>& bytes, std::size_t n,
                                const std::vector<int>& contexts,
                                const std::vector<CodingTable>& models) {
  if (!contexts.empty() && contexts.size() != n)
    throw std::invalid_argument("decode_entropy: context/sequence size mismatch");
  RangeDecoder dec(bytes);
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CodingTable& t = models[contexts.empty() ? 0 : contexts[i]];
    out[i] = decode_symbol(dec, t);
  }
  return out;
}

const Stream* EncodedBundle::find(const std::string& name) const {
  for (const auto& s : streams)
    if (s.name == name) return &s;
  return nullptr;
}

std::vector<std::uint8_t> error_sequence(const LabelingPair& l, const SampleBlock& block) {
  std::vector<std::uint8_t> e(block.n);
  for (std::uint64_t i = 0; i < block.n; ++i)
    e[i] = l.phi_x[block.x_seq[i]] != l.phi_y[block.y_seq[i]] ? 1 : 0;
  return e;
}

std::vector<std::uint8_t> error_sequence_limited(const JointDistribution& j,
                                                 const LabelingPair& l,
                                                 const SampleBlock& block) {
  const CutSets cuts = cut_sets(j, l);
  std::vector<int> cut_rank_x(j.nx(), -1), cut_rank_y(j.ny(), -1);
  for (std::size_t k = 0; k < cuts.s_x.size(); ++k) cut_rank_x[cuts.s_x[k]] = static_cast<int>(k);
  for (std::size_t k = 0; k < cuts.s_y.size(); ++k) cut_rank_y[cuts.s_y[k]] = static_cast<int>(k);

  std::vector<std::uint8_t> e(block.n);
  for (std::uint64_t i = 0; i < block.n; ++i) {
    // The helper sees X_cut and Y_cut only: the identity of symbols inside
    // the cut sets, one collapsed symbol otherwise.
    const int rx = cut_rank_x[block.x_seq[i]];
    const int ry = cut_rank_y[block.y_seq[i]];
    if (rx < 0 || ry < 0) {
      e[i] = 0;  // a symbol outside its cut set can never disagree
    } else {
      const int x = cuts.s_x[rx], y = cuts.s_y[ry];
      e[i] = l.phi_x[x] != l.phi_y[y] ? 1 : 0;
    }
  }
  return e;
}

namespace {

struct GkModels {
  ComponentDecomposition comp;
  CodingTable label;
  std::vector<CodingTable> x_given, y_given;
  double h_k = 0.0, h_x_given_k = 0.0, h_y_given_k = 0.0;
};

GkModels build_gk_models(const JointDistribution& j) {
  GkModels m;
  m.comp = connected_components(j);
  m.label = make_coding_table(m.comp.weights.values());
  const LabelingPair l{m.comp.component_of_x, m.comp.component_of_y, m.comp.count};
  for (int c = 0; c < m.comp.count; ++c) {
    m.x_given.push_back(
        conditional_table(j.px(), m.comp.component_of_x, c, m.comp.weights[c]));
    m.y_given.push_back(
        conditional_table(j.py(), m.comp.component_of_y, c, m.comp.weights[c]));
  }
  m.h_k = entropy_bits(m.comp.weights);
  m.h_x_given_k = residual_entropy_x(j, l);
  m.h_y_given_k = residual_entropy_y(j, l);
  return m;
}

struct GeneralModels {
  CodingTable label_y;                     // phi_Y(Y)
  std::vector<CodingTable> y_given_label;  // Y | phi_Y
  std::vector<CodingTable> phi_x_given;    // phi_X | phi_Y
  std::vector<CodingTable> x_given_label;  // X | phi_X
};

GeneralModels build_general_models(const JointDistribution& j, const LabelingPair& l) {
  GeneralModels m;
  const std::vector<double> mass_y = label_masses(j.py(), l.phi_y, l.range_size);
  const std::vector<double> mass_x = label_masses(j.px(), l.phi_x, l.range_size);
  m.label_y = make_coding_table(mass_y);
  const Eigen::MatrixXd q = induced_label_joint(j, l);
  for (int b = 0; b < l.range_size; ++b) {
    m.y_given_label.push_back(conditional_table(j.py(), l.phi_y, b, mass_y[b]));
    std::vector<double> cond(l.range_size, 0.0);
    const double col = q.col(b).sum();
    if (col > 0.0)
      for (int a = 0; a < l.range_size; ++a) cond[a] = q(a, b) / col;
    m.phi_x_given.push_back(make_coding_table(pmf_or_point_mass(std::move(cond))));
  }
  for (int a = 0; a < l.range_size; ++a)
    m.x_given_label.push_back(conditional_table(j.px(), l.phi_x, a, mass_x[a]));
  return m;
}

RateReport finish_report(const EncodedBundle& bundle,
                         const std::vector<double>& targets, bool decoded_ok) {
  RateReport r;
  const double n = static_cast<double>(bundle.n);
  for (std::size_t i = 0; i < bundle.streams.size(); ++i) {
    StreamRate sr;
    sr.name = bundle.streams[i].name;
    sr.bits_per_symbol = static_cast<double>(bundle.streams[i].bit_length) / n;
    sr.target = targets[i];
    r.total_rate += sr.bits_per_symbol;
    r.total_target += sr.target;
    r.streams.push_back(std::move(sr));
  }
  r.decoded_ok = decoded_ok;
  return r;
}

void require_binary(const LabelingPair& l, const char* where) {
  if (!l.is_binary())
    throw std::invalid_argument(std::string(where) + ": binary labelings only");
}

}  // namespace

SchemeResult run_gk_scheme(const JointDistribution& j, const SampleBlock& block) {
  const GkModels m = build_gk_models(j);
  const std::vector<int> k_seq = apply_phi(m.comp.component_of_x, block.x_seq);

  SchemeResult res;
  res.bundle.scheme = "gk";
  res.bundle.n = block.n;
  res.bundle.seed = block.seed;
  res.bundle.streams.push_back(
      make_stream("label", encode_entropy(k_seq, {}, {m.label})));
  res.bundle.streams.push_back(
      make_stream("x-residual", encode_entropy(to_int(block.x_seq), k_seq, m.x_given)));
  res.bundle.streams.push_back(
      make_stream("y-residual", encode_entropy(to_int(block.y_seq), k_seq, m.y_given)));

  res.decoded = decode_bundle(j, nullptr, res.bundle);
  res.report = finish_report(res.bundle, {m.h_k, m.h_x_given_k, m.h_y_given_k},
                             res.decoded == block);
  return res;
}

SchemeResult run_binary_helper_scheme(const JointDistribution& j, const LabelingPair& l,
                                      const SampleBlock& block, HelperCorner corner) {
  require_binary(l, "run_binary_helper_scheme");
  l.validate(j.nx(), j.ny());

  const double p_err = disagreement_probability(j, l);
  const CodingTable e_table = make_coding_table({1.0 - p_err, p_err});
  const std::vector<std::uint8_t> e = error_sequence(l, block);
  const std::vector<int> e_seq(e.begin(), e.end());

  SchemeResult res;
  res.bundle.scheme = "binary-helper";
  res.bundle.n = block.n;
  res.bundle.seed = block.seed;

  if (corner == HelperCorner::XSide) {
    const CodingTable y_full = make_coding_table(j.py().values());
    const std::vector<double> mass_x = label_masses(j.px(), l.phi_x, 2);
    std::vector<CodingTable> x_given;
    for (int a = 0; a < 2; ++a)
      x_given.push_back(conditional_table(j.px(), l.phi_x, a, mass_x[a]));
    const std::vector<int> lx = apply_phi(l.phi_x, block.x_seq);

    res.bundle.streams.push_back(
        make_stream("y-stream", encode_entropy(to_int(block.y_seq), {}, {y_full})));
    res.bundle.streams.push_back(make_stream("helper", encode_entropy(e_seq, {}, {e_table})));
    res.bundle.streams.push_back(
        make_stream("x-residual", encode_entropy(to_int(block.x_seq), lx, x_given)));
    res.decoded = decode_bundle(j, &l, res.bundle);
    res.report = finish_report(
        res.bundle,
        {entropy_bits(j.py()), binary_entropy(p_err), residual_entropy_x(j, l)},
        res.decoded == block);
  } else {
    const CodingTable x_full = make_coding_table(j.px().values());
    const std::vector<double> mass_y = label_masses(j.py(), l.phi_y, 2);
    std::vector<CodingTable> y_given;
    for (int b = 0; b < 2; ++b)
      y_given.push_back(conditional_table(j.py(), l.phi_y, b, mass_y[b]));
    const std::vector<int> ly = apply_phi(l.phi_y, block.y_seq);

    res.bundle.streams.push_back(
        make_stream("x-stream", encode_entropy(to_int(block.x_seq), {}, {x_full})));
    res.bundle.streams.push_back(make_stream("helper", encode_entropy(e_seq, {}, {e_table})));
    res.bundle.streams.push_back(
        make_stream("y-residual", encode_entropy(to_int(block.y_seq), ly, y_given)));
    res.decoded = decode_bundle(j, &l, res.bundle);
    res.report = finish_report(
        res.bundle,
        {entropy_bits(j.px()), binary_entropy(p_err), residual_entropy_y(j, l)},
        res.decoded == block);
  }
  return res;
}

SchemeResult run_general_helper_scheme(const JointDistribution& j, const LabelingPair& l,
                                       const SampleBlock& block) {
  l.validate(j.nx(), j.ny());
  const GeneralModels m = build_general_models(j, l);
  const std::vector<int> ly = apply_phi(l.phi_y, block.y_seq);
  const std::vector<int> lx = apply_phi(l.phi_x, block.x_seq);

  SchemeResult res;
  res.bundle.scheme = "general-helper";
  res.bundle.n = block.n;
  res.bundle.seed = block.seed;
  res.bundle.streams.push_back(make_stream("label", encode_entropy(ly, {}, {m.label_y})));
  res.bundle.streams.push_back(
      make_stream("y-residual", encode_entropy(to_int(block.y_seq), ly, m.y_given_label)));
  res.bundle.streams.push_back(make_stream("helper", encode_entropy(lx, ly, m.phi_x_given)));
  res.bundle.streams.push_back(
      make_stream("x-residual", encode_entropy(to_int(block.x_seq), lx, m.x_given_label)));

  res.decoded = decode_bundle(j, &l, res.bundle);
  res.report = finish_report(res.bundle,
                             {label_entropy_y(j, l), residual_entropy_y(j, l),
                              helper_rate_general(j, l), residual_entropy_x(j, l)},
                             res.decoded == block);
  return res;
}

namespace {

struct CutCoding {
  CutSets cuts;
  std::vector<int> rank_x, rank_y;  // symbol -> cut index, or the collapsed symbol
  CodingTable table_x, table_y;
};

CutCoding build_cut_coding(const JointDistribution& j, const LabelingPair& l) {
  CutCoding c;
  c.cuts = cut_sets(j, l);
  c.rank_x.assign(j.nx(), static_cast<int>(c.cuts.s_x.size()));
  c.rank_y.assign(j.ny(), static_cast<int>(c.cuts.s_y.size()));
  std::vector<double> pmf_x(c.cuts.s_x.size() + 1, 0.0), pmf_y(c.cuts.s_y.size() + 1, 0.0);
  for (std::size_t k = 0; k < c.cuts.s_x.size(); ++k) {
    c.rank_x[c.cuts.s_x[k]] = static_cast<int>(k);
    pmf_x[k] = j.px()[c.cuts.s_x[k]];
  }
  for (std::size_t k = 0; k < c.cuts.s_y.size(); ++k) {
    c.rank_y[c.cuts.s_y[k]] = static_cast<int>(k);
    pmf_y[k] = j.py()[c.cuts.s_y[k]];
  }
  pmf_x.back() = std::max(0.0, 1.0 - std::accumulate(pmf_x.begin(), pmf_x.end() - 1, 0.0));
  pmf_y.back() = std::max(0.0, 1.0 - std::accumulate(pmf_y.begin(), pmf_y.end() - 1, 0.0));
  c.table_x = make_coding_table(pmf_or_point_mass(std::move(pmf_x)));
  c.table_y = make_coding_table(pmf_or_point_mass(std::move(pmf_y)));
  return c;
}

}  // namespace

SchemeResult run_limited_helper_scheme(const JointDistribution& j, const LabelingPair& l,
                                       const SampleBlock& block) {
  require_binary(l, "run_limited_helper_scheme");
  l.validate(j.nx(), j.ny());
  const CutCoding cut = build_cut_coding(j, l);

  std::vector<int> xcut_seq(block.n), ycut_seq(block.n);
  for (std::uint64_t i = 0; i < block.n; ++i) {
    xcut_seq[i] = cut.rank_x[block.x_seq[i]];
    ycut_seq[i] = cut.rank_y[block.y_seq[i]];
  }

  // The helper reconstructs e^n from the cut streams alone; it must match
  // the omniscient computation exactly.
  const std::vector<std::uint8_t> e_limited = error_sequence_limited(j, l, block);
  if (e_limited != error_sequence(l, block))
    throw std::logic_error(
        "run_limited_helper_scheme: cut-based error sequence diverged from omniscient");

  const double p_err = disagreement_probability(j, l);
  const CodingTable e_table = make_coding_table({1.0 - p_err, p_err});
  const CodingTable y_full = make_coding_table(j.py().values());
  const std::vector<double> mass_x = label_masses(j.px(), l.phi_x, 2);
  std::vector<CodingTable> x_given;
  for (int a = 0; a < 2; ++a)
    x_given.push_back(conditional_table(j.px(), l.phi_x, a, mass_x[a]));
  const std::vector<int> lx = apply_phi(l.phi_x, block.x_seq);
  const std::vector<int> e_seq(e_limited.begin(), e_limited.end());

  SchemeResult res;
  res.bundle.scheme = "limited-helper";
  res.bundle.n = block.n;
  res.bundle.seed = block.seed;
  res.bundle.streams.push_back(
      make_stream("x-to-helper", encode_entropy(xcut_seq, {}, {cut.table_x})));
  res.bundle.streams.push_back(
      make_stream("y-to-helper", encode_entropy(ycut_seq, {}, {cut.table_y})));
  res.bundle.streams.push_back(
      make_stream("y-stream", encode_entropy(to_int(block.y_seq), {}, {y_full})));
  res.bundle.streams.push_back(make_stream("helper", encode_entropy(e_seq, {}, {e_table})));
  res.bundle.streams.push_back(
      make_stream("x-residual", encode_entropy(to_int(block.x_seq), lx, x_given)));

  res.decoded = decode_bundle(j, &l, res.bundle);
  res.report = finish_report(res.bundle,
                             {cut.cuts.h_x_cut, cut.cuts.h_y_cut, entropy_bits(j.py()),
                              binary_entropy(p_err), residual_entropy_x(j, l)},
                             res.decoded == block);
  return res;
}

namespace {

const Stream& need_stream(const EncodedBundle& b, const std::string& name) {
  const Stream* s = b.find(name);
  if (!s) throw std::invalid_argument("bundle: missing stream '" + name + "'");
  return *s;
}

std::vector<std::int32_t> to_i32(const std::vector<int>& v) {
  return std::vector<std::int32_t>(v.begin(), v.end());
}

}  // namespace

SampleBlock decode_bundle(const JointDistribution& j, const LabelingPair* l,
                          const EncodedBundle& bundle) {
  SampleBlock out;
  out.n = bundle.n;
  out.seed = bundle.seed;
  const std::size_t n = bundle.n;

  if (bundle.scheme == "gk") {
    const GkModels m = build_gk_models(j);
    const std::vector<int> k_seq =
        decode_entropy(need_stream(bundle, "label").bytes, n, {}, {m.label});
    out.x_seq = to_i32(
        decode_entropy(need_stream(bundle, "x-residual").bytes, n, k_seq, m.x_given));
    out.y_seq = to_i32(
        decode_entropy(need_stream(bundle, "y-residual").bytes, n, k_seq, m.y_given));
    return out;
  }

  if (!l) throw std::invalid_argument("decode_bundle: labeling required for this scheme");
  l->validate(j.nx(), j.ny());

  if (bundle.scheme == "binary-helper" || bundle.scheme == "limited-helper") {
    require_binary(*l, "decode_bundle");
    const double p_err = disagreement_probability(j, *l);
    const CodingTable e_table = make_coding_table({1.0 - p_err, p_err});
    const std::vector<int> e_seq =
        decode_entropy(need_stream(bundle, "helper").bytes, n, {}, {e_table});

    if (bundle.find("y-stream")) {  // X-side corner: Y was sent fully
      const CodingTable y_full = make_coding_table(j.py().values());
      const std::vector<int> y =
          decode_entropy(need_stream(bundle, "y-stream").bytes, n, {}, {y_full});
      std::vector<int> lx(n);
      for (std::size_t i = 0; i < n; ++i) {
        const int ly = l->phi_y[y[i]];
        lx[i] = e_seq[i] ? 1 - ly : ly;  // flip the binary label on error
      }
      const std::vector<double> mass_x = label_masses(j.px(), l->phi_x, 2);
      std::vector<CodingTable> x_given;
      for (int a = 0; a < 2; ++a)
        x_given.push_back(conditional_table(j.px(), l->phi_x, a, mass_x[a]));
      out.x_seq =
          to_i32(decode_entropy(need_stream(bundle, "x-residual").bytes, n, lx, x_given));
      out.y_seq = to_i32(y);
    } else {  // Y-side corner
      const CodingTable x_full = make_coding_table(j.px().values());
      const std::vector<int> x =
          decode_entropy(need_stream(bundle, "x-stream").bytes, n, {}, {x_full});
      std::vector<int> ly(n);
      for (std::size_t i = 0; i < n; ++i) {
        const int lx = l->phi_x[x[i]];
        ly[i] = e_seq[i] ? 1 - lx : lx;
      }
      const std::vector<double> mass_y = label_masses(j.py(), l->phi_y, 2);
      std::vector<CodingTable> y_given;
      for (int b = 0; b < 2; ++b)
        y_given.push_back(conditional_table(j.py(), l->phi_y, b, mass_y[b]));
      out.y_seq =
          to_i32(decode_entropy(need_stream(bundle, "y-residual").bytes, n, ly, y_given));
      out.x_seq = to_i32(x);
    }
    return out;
  }

  if (bundle.scheme == "general-helper") {
    const GeneralModels m = build_general_models(j, *l);
    const std::vector<int> ly =
        decode_entropy(need_stream(bundle, "label").bytes, n, {}, {m.label_y});
    out.y_seq = to_i32(
        decode_entropy(need_stream(bundle, "y-residual").bytes, n, ly, m.y_given_label));
    const std::vector<int> lx =
        decode_entropy(need_stream(bundle, "helper").bytes, n, ly, m.phi_x_given);
    out.x_seq = to_i32(
        decode_entropy(need_stream(bundle, "x-residual").bytes, n, lx, m.x_given_label));
    return out;
  }

  throw std::invalid_argument("decode_bundle: unknown scheme '" + bundle.scheme + "'");
}

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  std::uint8_t b[4] = {static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8),
                       static_cast<std::uint8_t>(v >> 16),
                       static_cast<std::uint8_t>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  put_u32(out, static_cast<std::uint32_t>(v));
  put_u32(out, static_cast<std::uint32_t>(v >> 32));
}

std::uint32_t get_u32(std::istream& in) {
  std::uint8_t b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw std::invalid_argument("bundle file: truncated");
  return b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint64_t get_u64(std::istream& in) {
  const std::uint64_t lo = get_u32(in);
  return lo | (static_cast<std::uint64_t>(get_u32(in)) << 32);
}

constexpr char kMagic[4] = {'G', 'K', 'C', 'B'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

void write_bundle_file(const EncodedBundle& bundle, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write bundle file: " + path);
  out.write(kMagic, 4);
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(bundle.scheme.size()));
  out.write(bundle.scheme.data(), bundle.scheme.size());
  put_u64(out, bundle.n);
  put_u64(out, bundle.seed);
  put_u32(out, static_cast<std::uint32_t>(bundle.streams.size()));
  for (const auto& s : bundle.streams) {
    put_u32(out, static_cast<std::uint32_t>(s.name.size()));
    out.write(s.name.data(), s.name.size());
    put_u64(out, s.bit_length);
    put_u64(out, s.bytes.size());
  }
  for (const auto& s : bundle.streams)
    out.write(reinterpret_cast<const char*>(s.bytes.data()), s.bytes.size());
}

EncodedBundle read_bundle_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open bundle file: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::invalid_argument("bundle file: bad magic");
  if (get_u32(in) != kVersion) throw std::invalid_argument("bundle file: bad version");

  EncodedBundle b;
  const std::uint32_t scheme_len = get_u32(in);
  if (scheme_len > 64) throw std::invalid_argument("bundle file: oversized scheme tag");
  b.scheme.resize(scheme_len);
  in.read(b.scheme.data(), b.scheme.size());
  b.n = get_u64(in);
  b.seed = get_u64(in);
  const std::uint32_t count = get_u32(in);
  if (count > 64) throw std::invalid_argument("bundle file: oversized stream directory");
  std::vector<std::uint64_t> sizes;
  for (std::uint32_t i = 0; i < count; ++i) {
    Stream s;
    const std::uint32_t name_len = get_u32(in);
    if (name_len > 256) throw std::invalid_argument("bundle file: oversized stream name");
    s.name.resize(name_len);
    in.read(s.name.data(), s.name.size());
    if (!in) throw std::invalid_argument("bundle file: truncated");
    s.bit_length = get_u64(in);
    sizes.push_back(get_u64(in));
    b.streams.push_back(std::move(s));
  }
  for (std::uint32_t i = 0; i < count; ++i) {
    b.streams[i].bytes.resize(sizes[i]);
    in.read(reinterpret_cast<char*>(b.streams[i].bytes.data()), sizes[i]);
    if (!in) throw std::invalid_argument("bundle file: truncated payload");
  }
  return b;
}

}  // namespace gkd
