#include "cmsst/synthetic.hpp"

#include "cmsst/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cmsst {

namespace {

// Centers sit on an axis lattice: center g gets coordinate
// spread * (1 + g / d) on axis (g mod d). Distinct centers are at least
// `spread` apart, and the placement is a pure function of (g, d, spread),
// so corpora generated with different seeds share geometry.
Mat place_centers(int count, int dim, double spread) {
  Mat centers = Mat::Zero(count, dim);
  for (int g = 0; g < count; ++g) {
    const int axis = g % dim;
    const int ring = g / dim;
    centers(g, axis) = spread * static_cast<double>(1 + ring);
    if (ring > 0) centers(g, (axis + 1) % dim) = 0.5 * spread;  // de-align rings
  }
  return centers;
}

Vec noisy_point(const Mat& centers, int center, double noise, Rng& rng) {
  Vec v(centers.cols());
  for (Eigen::Index j = 0; j < centers.cols(); ++j)
    v[j] = centers(center, j) + noise * rng.normal();
  return v;
}

std::string sample_id(std::size_t index) {
  std::ostringstream os;
  os << 's';
  std::string digits = std::to_string(index);
  os << std::string(digits.size() >= 6 ? 0 : 6 - digits.size(), '0') << digits;
  return os.str();
}

}  // namespace

SyntheticCorpus generate_synthetic_corpus(const SyntheticSpec& spec) {
  const int n_target_clusters = static_cast<int>(spec.target_cluster_sizes.size());
  const int n_other_clusters = static_cast<int>(spec.other_cluster_sizes.size());
  const int n_clusters = n_target_clusters + n_other_clusters;
  if (n_clusters == 0) throw std::invalid_argument("synthetic spec has zero clusters");
  if (spec.text_dim < 1 || spec.speech_dim < 1)
    throw std::invalid_argument("synthetic spec dims must be >= 1");
  for (int s : spec.target_cluster_sizes)
    if (s <= 0) throw std::invalid_argument("synthetic cluster sizes must be positive");
  for (int s : spec.other_cluster_sizes)
    if (s <= 0) throw std::invalid_argument("synthetic cluster sizes must be positive");
  if (spec.mismatch_fraction < 0.0 || spec.mismatch_fraction > 1.0)
    throw std::invalid_argument("mismatch_fraction must be in [0, 1]");
  if (spec.span_types > 0 && spec.spans_per_sample < 1)
    throw std::invalid_argument("spans_per_sample must be >= 1 when span_types > 0");

  SyntheticCorpus out;
  out.text_centers = place_centers(n_clusters, spec.text_dim, spec.center_spread);
  out.speech_centers = place_centers(n_clusters, spec.speech_dim, spec.center_spread);

  // Span embeddings live near the text content, so span-type centers share
  // the text lattice: type k coincides with text center k where both exist.
  Mat span_centers;
  if (spec.span_types > 0)
    span_centers = place_centers(spec.span_types, spec.text_dim, spec.center_spread);

  const std::size_t n_target = static_cast<std::size_t>(
      std::accumulate(spec.target_cluster_sizes.begin(), spec.target_cluster_sizes.end(), 0));
  const std::size_t n_other = static_cast<std::size_t>(
      std::accumulate(spec.other_cluster_sizes.begin(), spec.other_cluster_sizes.end(), 0));
  const std::size_t n_total = n_target + n_other;

  Rng rng(Rng::derive(spec.seed, 0x5e11));

  std::vector<Sample> samples;
  samples.reserve(n_total);
  out.true_center.reserve(n_total);

  auto emit_cluster = [&](int center, int size, bool is_target) {
    for (int i = 0; i < size; ++i) {
      Sample s;
      s.id = sample_id(samples.size());
      s.domain = is_target ? kDomainTarget : kDomainOther;
      s.text_emb = noisy_point(out.text_centers, center, spec.noise_scale, rng);
      s.speech_emb = noisy_point(out.speech_centers, center, spec.noise_scale, rng);
      s.pseudolabel = center;  // label follows the text side; fixed up on mismatch
      if (spec.span_types > 0 && is_target) {
        for (int k = 0; k < spec.spans_per_sample; ++k) {
          EntitySpan span;
          const int type = (center + k) % spec.span_types;
          span.type = "type_" + std::to_string(type);
          span.emb = noisy_point(span_centers, type, spec.noise_scale, rng);
          s.spans.push_back(std::move(span));
        }
      }
      out.true_center.push_back(center);
      samples.push_back(std::move(s));
    }
  };

  for (int c = 0; c < n_target_clusters; ++c)
    emit_cluster(c, spec.target_cluster_sizes[c], true);
  for (int c = 0; c < n_other_clusters; ++c)
    emit_cluster(n_target_clusters + c, spec.other_cluster_sizes[c], false);

  // Pick the mismatched set: a seeded shuffle of all indices, first m taken.
  out.mismatched.assign(n_total, false);
  const std::size_t n_mismatch =
      static_cast<std::size_t>(std::llround(spec.mismatch_fraction * static_cast<double>(n_total)));
  if (n_mismatch > 0) {
    std::vector<std::size_t> order(n_total);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n_total - 1; i > 0; --i) {
      const std::size_t j = rng.uniform_below(i + 1);
      std::swap(order[i], order[j]);
    }
    std::vector<std::size_t> flagged(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_mismatch));
    std::sort(flagged.begin(), flagged.end());
    for (std::size_t idx : flagged) {
      const bool is_target = samples[idx].domain == kDomainTarget;
      const int pool_begin = is_target ? 0 : n_target_clusters;
      const int pool_size = is_target ? n_target_clusters : n_other_clusters;
      if (pool_size < 2)
        throw std::invalid_argument(
            "mismatch_fraction > 0 needs at least two clusters per affected domain");
      const int own = out.true_center[idx];
      int alt = pool_begin + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(pool_size - 1)));
      if (alt >= own) ++alt;
      samples[idx].text_emb = noisy_point(out.text_centers, alt, spec.noise_scale, rng);
      samples[idx].pseudolabel = alt;
      out.mismatched[idx] = true;
    }
  }

  out.corpus = Corpus(std::move(samples));
  return out;
}

}  // namespace cmsst
