#include "cmsst/corpus.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cmsst {

using nlohmann::json;

namespace {

[[noreturn]] void line_error(std::size_t line_no, const std::string& what) {
  std::ostringstream os;
  os << "corpus line " << line_no << ": " << what;
  throw std::runtime_error(os.str());
}

Vec parse_vector(const json& arr, std::size_t line_no, const std::string& field) {
  if (!arr.is_array() || arr.empty())
    line_error(line_no, "field '" + field + "' must be a nonempty numeric array");
  Vec v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number())
      line_error(line_no, "field '" + field + "' has a non-numeric entry");
    const double x = arr[i].get<double>();
    if (!std::isfinite(x))
      line_error(line_no, "field '" + field + "' has a non-finite entry");
    v[static_cast<Eigen::Index>(i)] = x;
  }
  return v;
}

json vector_to_json(const Vec& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

}  // namespace

Corpus::Corpus(std::vector<Sample> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw std::invalid_argument("corpus must be nonempty");
  meta_.text_dim = samples_.front().text_emb.size();
  meta_.speech_dim = samples_.front().speech_emb.size();
  index_.reserve(samples_.size());
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const Sample& s = samples_[i];
    if (s.text_emb.size() != meta_.text_dim || s.speech_emb.size() != meta_.speech_dim)
      throw std::invalid_argument("corpus sample '" + s.id + "': embedding dimension mismatch");
    if (!s.text_emb.allFinite() || !s.speech_emb.allFinite())
      throw std::invalid_argument("corpus sample '" + s.id + "': non-finite embedding");
    if (s.domain != kDomainTarget && s.domain != kDomainOther)
      throw std::invalid_argument("corpus sample '" + s.id + "': unknown domain tag '" + s.domain + "'");
    if (s.pseudolabel && *s.pseudolabel < 0)
      throw std::invalid_argument("corpus sample '" + s.id + "': negative pseudolabel");
    for (const EntitySpan& sp : s.spans) {
      if (sp.emb.size() != meta_.text_dim)
        throw std::invalid_argument("corpus sample '" + s.id + "': span dimension mismatch");
      if (!sp.emb.allFinite())
        throw std::invalid_argument("corpus sample '" + s.id + "': non-finite span embedding");
    }
    if (!index_.emplace(s.id, i).second)
      throw std::invalid_argument("duplicate sample id '" + s.id + "'");
    if (s.domain == kDomainTarget)
      ++meta_.target_count;
    else
      ++meta_.other_count;
  }
}

const Sample* Corpus::find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &samples_[it->second];
}

std::size_t Corpus::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw std::invalid_argument("unknown sample id '" + id + "'");
  return it->second;
}

Corpus load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);

  std::vector<Sample> samples;
  std::string line;
  std::size_t line_no = 0;
  Eigen::Index text_dim = -1, speech_dim = -1;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;

    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      line_error(line_no, std::string("malformed record: ") + e.what());
    }
    if (!rec.is_object()) line_error(line_no, "record is not an object");

    for (const char* field : {"id", "domain", "text_emb", "speech_emb"})
      if (!rec.contains(field))
        line_error(line_no, std::string("missing required field '") + field + "'");

    Sample s;
    if (!rec["id"].is_string()) line_error(line_no, "field 'id' must be a string");
    s.id = rec["id"].get<std::string>();
    if (!rec["domain"].is_string()) line_error(line_no, "field 'domain' must be a string");
    s.domain = rec["domain"].get<std::string>();
    if (s.domain != kDomainTarget && s.domain != kDomainOther)
      line_error(line_no, "field 'domain' must be \"target\" or \"other\"");

    s.text_emb = parse_vector(rec["text_emb"], line_no, "text_emb");
    s.speech_emb = parse_vector(rec["speech_emb"], line_no, "speech_emb");

    if (text_dim < 0) {
      text_dim = s.text_emb.size();
      speech_dim = s.speech_emb.size();
    } else {
      if (s.text_emb.size() != text_dim)
        line_error(line_no, "text_emb dimension mismatch: expected " + std::to_string(text_dim) +
                                ", got " + std::to_string(s.text_emb.size()));
      if (s.speech_emb.size() != speech_dim)
        line_error(line_no, "speech_emb dimension mismatch: expected " + std::to_string(speech_dim) +
                                ", got " + std::to_string(s.speech_emb.size()));
    }

    if (rec.contains("pseudolabel") && !rec["pseudolabel"].is_null()) {
      if (!rec["pseudolabel"].is_number_integer())
        line_error(line_no, "field 'pseudolabel' must be an integer");
      const int label = rec["pseudolabel"].get<int>();
      if (label < 0) line_error(line_no, "field 'pseudolabel' must be >= 0");
      s.pseudolabel = label;
    }

    if (rec.contains("spans") && !rec["spans"].is_null()) {
      if (!rec["spans"].is_array()) line_error(line_no, "field 'spans' must be an array");
      for (const json& sp : rec["spans"]) {
        if (!sp.is_object() || !sp.contains("type") || !sp.contains("emb"))
          line_error(line_no, "span entries need 'type' and 'emb'");
        if (!sp["type"].is_string()) line_error(line_no, "span field 'type' must be a string");
        EntitySpan span;
        span.type = sp["type"].get<std::string>();
        span.emb = parse_vector(sp["emb"], line_no, "spans.emb");
        if (span.emb.size() != text_dim)
          line_error(line_no, "span embedding dimension mismatch: expected " +
                                  std::to_string(text_dim) + ", got " + std::to_string(span.emb.size()));
        s.spans.push_back(std::move(span));
      }
    }

    samples.push_back(std::move(s));
  }

  if (samples.empty()) throw std::runtime_error("corpus file is empty: " + path);

  try {
    return Corpus(std::move(samples));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error("corpus file " + path + ": " + e.what());
  }
}

void save_corpus(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write corpus file: " + path);
  for (const Sample& s : corpus.samples()) {
    json rec;
    rec["id"] = s.id;
    rec["domain"] = s.domain;
    rec["text_emb"] = vector_to_json(s.text_emb);
    rec["speech_emb"] = vector_to_json(s.speech_emb);
    if (s.pseudolabel) rec["pseudolabel"] = *s.pseudolabel;
    if (!s.spans.empty()) {
      json spans = json::array();
      for (const EntitySpan& sp : s.spans)
        spans.push_back(json{{"type", sp.type}, {"emb", vector_to_json(sp.emb)}});
      rec["spans"] = std::move(spans);
    }
    out << rec.dump() << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_selection(const std::vector<std::string>& ids, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write selection file: " + path);
  for (const std::string& id : ids) out << id << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<std::string> read_selection(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open selection file: " + path);
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ids.push_back(line);
  return ids;
}

Corpus subset_by_ids(const Corpus& corpus, const std::vector<std::string>& ids) {
  std::vector<std::size_t> rows;
  rows.reserve(ids.size());
  for (const std::string& id : ids) rows.push_back(corpus.index_of(id));
  std::sort(rows.begin(), rows.end());
  std::vector<Sample> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) out.push_back(corpus.at(r));
  return Corpus(std::move(out));
}

Corpus strip_domains(const Corpus& corpus) {
  std::vector<Sample> out = corpus.samples();
  for (Sample& s : out) s.domain = kDomainOther;
  return Corpus(std::move(out));
}

}  // namespace cmsst
