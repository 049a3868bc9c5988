// Copyright 2026 The fgrain Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Part-of-speech tagging and shallow chunking for captions.
//
// The tagger is a greedy left-to-right averaged perceptron over the universal
// coarse tag set. Units (nouns, noun phrases, verbs) are read off the tagged
// sequence; noun phrases use the chunk grammar
//
//   DET? NUM? ADJ* (NOUN|PROPN)+
//
// matched leftmost-longest.

#ifndef FGRAIN_TAGGER_HPP_
#define FGRAIN_TAGGER_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fgrain {

enum class PosTag : std::uint8_t {
  kNoun,
  kPropn,
  kVerb,
  kAux,
  kAdj,
  kDet,
  kAdp,
  kPron,
  kNum,
  kConj,
  kPart,
  kPunct,
  kAdv,
  kX,
};

inline constexpr std::size_t kTagCount = 14;

std::string_view tag_name(PosTag tag);
std::optional<PosTag> parse_tag(std::string_view name);
// All tags in declaration order.
std::span<const PosTag> all_tags();

struct Token {
  std::string surface;
  std::size_t start = 0;  // byte offsets into the source text
  std::size_t end = 0;
  std::optional<PosTag> tag;

  bool operator==(const Token&) const = default;
};

enum class UnitKind { kNoun, kNounPhrase, kVerb };

std::string_view unit_kind_name(UnitKind kind);
std::optional<UnitKind> parse_unit_kind(std::string_view name);

struct TextUnit {
  std::string surface;
  UnitKind kind = UnitKind::kNoun;
  std::size_t first_token = 0;
  std::size_t last_token = 0;

  bool operator==(const TextUnit&) const = default;
};

// Splits on whitespace and peels punctuation, clitics ('s, n't, ...) and
// intra-word hyphens/slashes into separate tokens. Surfaces are exact byte
// slices of the input, so the input is recoverable from the tokens plus the
// skipped whitespace.
std::vector<Token> tokenize(std::string_view text);

struct TaggedSentence;
struct TrainOptions;
struct TrainResult;

class TaggerModel {
 public:
  using Weights = std::array<float, kTagCount>;

  // An unloaded model; tag() on it raises kModelNotLoaded.
  TaggerModel() = default;

  static TaggerModel load(const std::filesystem::path& path);
  static TaggerModel parse(std::string_view text);
  void save(const std::filesystem::path& path) const;
  std::string serialize() const;

  bool loaded() const { return loaded_; }
  const std::string& version() const { return version_; }
  std::size_t feature_count() const { return weights_.size(); }

  // Greedy decoding; deterministic.
  std::vector<PosTag> predict(std::span<const std::string> words) const;

 private:
  friend class PerceptronTrainer;
  friend TrainResult train_tagger(std::span<const TaggedSentence> corpus,
                                  const TrainOptions& options);

  PosTag choose(const Weights& scores, const std::string& lower) const;

  std::unordered_map<std::string, Weights> weights_;
  std::unordered_map<std::string, PosTag> lexicon_;  // most frequent tag per word
  PosTag default_tag_ = PosTag::kNoun;
  std::string version_;
  bool loaded_ = false;
};

// Returns copies of tokens with tag set. Throws kModelNotLoaded.
std::vector<Token> tag(const TaggerModel& model, std::span<const Token> tokens);

// Reads units off an already tagged token sequence.
std::vector<TextUnit> units_from_tags(std::string_view text,
                                      std::span<const Token> tagged,
                                      UnitKind kind);

std::vector<TextUnit> extract_units(const TaggerModel& model,
                                    std::string_view text, UnitKind kind);

struct TaggedSentence {
  std::vector<std::string> words;
  std::vector<std::string> tags;  // gold, validated at training time
};

// CoNLL-style: one "surface<TAB>TAG" per line, blank line between sentences,
// lines starting with '#' ignored.
std::vector<TaggedSentence> read_tagged_corpus(const std::filesystem::path& path);
std::vector<TaggedSentence> parse_tagged_corpus(std::string_view text);

struct TrainOptions {
  int epochs = 5;
  std::uint64_t seed = 0;
  // Every n-th sentence is held out for evaluation; 0 trains on everything.
  std::size_t hold_out_every = 0;
};

struct TrainResult {
  TaggerModel model;
  double train_accuracy = 0.0;              // on the training portion
  std::optional<double> held_out_accuracy;  // when hold_out_every > 0
};

// Throws kEmptyCorpus, kUnknownTagInCorpus, kInvalidArgument.
TrainResult train_tagger(std::span<const TaggedSentence> corpus,
                         const TrainOptions& options);

// Fraction of tokens whose predicted tag equals gold.
double token_accuracy(const TaggerModel& model,
                      std::span<const TaggedSentence> corpus);

}  // namespace fgrain

#endif  // FGRAIN_TAGGER_HPP_
