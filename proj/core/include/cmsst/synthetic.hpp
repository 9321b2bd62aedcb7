#pragma once

#include "cmsst/corpus.hpp"

#include <cstdint>
#include <vector>

namespace cmsst {

// Gaussian cluster corpus generator used by tests, demos and the `synth`
// subcommand. Target-domain samples are drawn around the first
// target_cluster_sizes.size() centers, other-domain samples around disjoint
// centers. A mismatch fraction of samples gets its text embedding redrawn
// around a different center of the same domain, which also corrupts the
// pseudolabel (labels follow the text side, as an upstream labeler would).
struct SyntheticSpec {
  std::vector<int> target_cluster_sizes;
  std::vector<int> other_cluster_sizes;
  int text_dim = 8;
  int speech_dim = 8;
  double center_spread = 10.0;  // scale of the center lattice
  double noise_scale = 1.0;     // stddev of isotropic noise around a center
  double mismatch_fraction = 0.0;
  int span_types = 0;  // 0 disables spans; otherwise target samples carry them
  int spans_per_sample = 1;
  std::uint64_t seed = 0;
};

struct SyntheticCorpus {
  Corpus corpus;
  // Generator metadata, not part of the corpus file format.
  std::vector<int> true_center;  // speech-side (actual) center per sample
  std::vector<bool> mismatched;  // text redrawn around a different center
  Mat text_centers;              // (n_target + n_other) x text_dim
  Mat speech_centers;            // (n_target + n_other) x speech_dim
};

// Pure function of (spec, seed): same spec twice gives byte-identical
// corpora. Centers are placed on a fixed axis lattice, so two specs sharing
// dims and spread share center geometry.
SyntheticCorpus generate_synthetic_corpus(const SyntheticSpec& spec);

}  // namespace cmsst
