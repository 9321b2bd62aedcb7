#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace cmsst {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr const char* kDomainTarget = "target";
inline constexpr const char* kDomainOther = "other";

// One precomputed entity-span embedding carried by a target-domain sample.
struct EntitySpan {
  std::string type;
  Vec emb;  // lives in the text embedding space (dim d_T)
};

// One speech-text pair with precomputed per-modality embeddings.
struct Sample {
  std::string id;
  std::string domain;  // "target" | "other"; evaluation-only metadata
  Vec text_emb;
  Vec speech_emb;
  std::optional<int> pseudolabel;
  std::vector<EntitySpan> spans;
};

struct CorpusMeta {
  Eigen::Index text_dim = 0;
  Eigen::Index speech_dim = 0;
  std::size_t target_count = 0;
  std::size_t other_count = 0;
};

// Immutable after construction; samples keep file order and ids are unique.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Sample> samples);

  const std::vector<Sample>& samples() const { return samples_; }
  const CorpusMeta& meta() const { return meta_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

  const Sample& at(std::size_t i) const { return samples_[i]; }
  // Returns nullptr when the id is unknown.
  const Sample* find(const std::string& id) const;
  std::size_t index_of(const std::string& id) const;

 private:
  std::vector<Sample> samples_;
  std::unordered_map<std::string, std::size_t> index_;
  CorpusMeta meta_;
};

// Reads a line-delimited corpus file (one JSON record per line). Reports the
// offending line number and field for malformed records, enforces unique ids,
// consistent dimensions and finite embedding values.
Corpus load_corpus(const std::string& path);

// Writes the corpus in the same line-delimited format load_corpus reads.
void save_corpus(const Corpus& corpus, const std::string& path);

// Newline-delimited id list, order preserved.
void write_selection(const std::vector<std::string>& ids, const std::string& path);
std::vector<std::string> read_selection(const std::string& path);

// Restricts a corpus to the given ids (corpus order preserved). Unknown ids
// are an error.
Corpus subset_by_ids(const Corpus& corpus, const std::vector<std::string>& ids);

// Returns a copy with every domain tag reset to "other". Used by the
// zero-shot audit: no selection output may change when tags are gone.
Corpus strip_domains(const Corpus& corpus);

}  // namespace cmsst
