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

#include "fgrain/tagger.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>

#include "fgrain/error.hpp"
#include "fgrain/random.hpp"
#include "text_io.hpp"

namespace fgrain {
namespace {

constexpr std::array<PosTag, kTagCount> kAllTags = {
    PosTag::kNoun, PosTag::kPropn, PosTag::kVerb, PosTag::kAux,  PosTag::kAdj,
    PosTag::kDet,  PosTag::kAdp,   PosTag::kPron, PosTag::kNum,  PosTag::kConj,
    PosTag::kPart, PosTag::kPunct, PosTag::kAdv,  PosTag::kX};

constexpr std::array<std::string_view, kTagCount> kTagNames = {
    "NOUN", "PROPN", "VERB", "AUX",  "ADJ",   "DET", "ADP",
    "PRON", "NUM",   "CONJ", "PART", "PUNCT", "ADV", "X"};

constexpr std::string_view kModelMagic = "fgrain-tagger 1";

// ---------------------------------------------------------------------------
// Tokenizer

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Bytes >= 0x80 belong to multi-byte UTF-8 letters for our purposes.
bool is_alpha(char c) {
  auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalpha(u);
}

bool is_alnum(char c) {
  return is_alpha(c) || std::isdigit(static_cast<unsigned char>(c));
}

bool is_prefix_punct(char c) {
  return c == '"' || c == '\'' || c == '(' || c == '[' || c == '{' || c == '`' ||
         c == '<';
}

bool is_suffix_punct(char c) {
  return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?' ||
         c == '"' || c == '\'' || c == ')' || c == ']' || c == '}' || c == '>';
}

// Curly quotes, 3 bytes in UTF-8: U+2018, U+2019, U+201C, U+201D.
bool curly_quote_at(std::string_view s, std::size_t pos) {
  return pos + 3 <= s.size() && static_cast<unsigned char>(s[pos]) == 0xE2 &&
         static_cast<unsigned char>(s[pos + 1]) == 0x80 &&
         (static_cast<unsigned char>(s[pos + 2]) == 0x98 ||
          static_cast<unsigned char>(s[pos + 2]) == 0x99 ||
          static_cast<unsigned char>(s[pos + 2]) == 0x9C ||
          static_cast<unsigned char>(s[pos + 2]) == 0x9D);
}

bool iequals_ascii(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

// Length of a trailing clitic ('s, n't, 're, ...) on word, or 0.
std::size_t clitic_length(std::string_view word) {
  static constexpr std::string_view kClitics[] = {"n't", "'s", "'re", "'ve", "'ll",
                                                   "'m",  "'d"};
  for (auto c : kClitics) {
    if (word.size() > c.size() && iequals_ascii(word.substr(word.size() - c.size()), c)) {
      return c.size();
    }
  }
  // Typographic apostrophe variant of 's.
  constexpr std::string_view kCurlyS = "\xE2\x80\x99s";
  if (word.size() > kCurlyS.size() &&
      iequals_ascii(word.substr(word.size() - kCurlyS.size()), kCurlyS)) {
    return kCurlyS.size();
  }
  return 0;
}

void emit(std::vector<Token>& out, std::string_view text, std::size_t start,
          std::size_t end) {
  if (end > start) out.push_back({std::string(text.substr(start, end - start)), start, end, {}});
}

// Splits a punctuation-free core at hyphens/slashes joining word characters.
void emit_core(std::vector<Token>& out, std::string_view text, std::size_t start,
               std::size_t end) {
  std::size_t piece = start;
  for (std::size_t i = start + 1; i + 1 < end; ++i) {
    char c = text[i];
    bool infix = (c == '-' && is_alnum(text[i - 1]) && is_alpha(text[i + 1])) ||
                 (c == '/' && is_alpha(text[i - 1]) && is_alpha(text[i + 1]));
    if (infix) {
      emit(out, text, piece, i);
      emit(out, text, i, i + 1);
      piece = i + 1;
    }
  }
  emit(out, text, piece, end);
}

void tokenize_chunk(std::vector<Token>& out, std::string_view text,
                    std::size_t start, std::size_t end) {
  // Leading punctuation, one token per mark.
  while (start < end) {
    if (is_prefix_punct(text[start])) {
      emit(out, text, start, start + 1);
      ++start;
    } else if (curly_quote_at(text, start) && start + 3 <= end) {
      emit(out, text, start, start + 3);
      start += 3;
    } else {
      break;
    }
  }
  // Trailing punctuation, collected right to left.
  std::vector<std::pair<std::size_t, std::size_t>> suffixes;
  while (end > start) {
    char c = text[end - 1];
    if (c == '.') {
      std::size_t run = end;
      while (run > start && text[run - 1] == '.') --run;
      if (end - run >= 2) {
        suffixes.emplace_back(run, end);
        end = run;
        continue;
      }
      // Keep the period of dotted abbreviations such as "U.S.".
      std::string_view core = text.substr(start, end - 1 - start);
      if (core.find('.') != std::string_view::npos && core.size() >= 2 &&
          is_alpha(core.back())) {
        break;
      }
      suffixes.emplace_back(end - 1, end);
      --end;
    } else if (is_suffix_punct(c)) {
      suffixes.emplace_back(end - 1, end);
      --end;
    } else if (end - start >= 3 && curly_quote_at(text, end - 3)) {
      suffixes.emplace_back(end - 3, end);
      end -= 3;
    } else {
      break;
    }
  }
  if (end > start) {
    std::size_t clitic = clitic_length(text.substr(start, end - start));
    emit_core(out, text, start, end - clitic);
    emit(out, text, end - clitic, end);
  }
  for (auto it = suffixes.rbegin(); it != suffixes.rend(); ++it) {
    emit(out, text, it->first, it->second);
  }
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// ---------------------------------------------------------------------------
// Features

std::string normalize_word(const std::string& word) {
  bool has_digit = false;
  bool all_numeric = !word.empty();
  for (char c : word) {
    auto u = static_cast<unsigned char>(c);
    if (std::isdigit(u)) {
      has_digit = true;
    } else if (c != ',' && c != '.') {
      all_numeric = false;
    }
  }
  if (has_digit && all_numeric) return "!NUM";
  return to_lower(word);
}

std::string shape_of(std::string_view word) {
  std::string shape;
  for (char c : word) {
    auto u = static_cast<unsigned char>(c);
    char k = u >= 0x80            ? 'u'
             : std::isupper(u)    ? 'X'
             : std::islower(u)    ? 'x'
             : std::isdigit(u)    ? 'd'
                                  : c;
    if (shape.empty() || shape.back() != k) shape.push_back(k);
  }
  return shape;
}

std::string suffix(const std::string& w, std::size_t n) {
  return w.size() <= n ? w : w.substr(w.size() - n);
}

class FeatureContext {
 public:
  explicit FeatureContext(std::span<const std::string> words) {
    norm_.reserve(words.size() + 4);
    norm_.push_back("-START2-");
    norm_.push_back("-START-");
    for (const auto& w : words) norm_.push_back(normalize_word(w));
    norm_.push_back("-END-");
    norm_.push_back("-END2-");
    raw_.assign(words.begin(), words.end());
  }

  // Features for token i given the two previously predicted tags.
  std::vector<std::string> features(std::size_t i, std::string_view prev,
                                    std::string_view prev2) const {
    const std::size_t k = i + 2;
    const std::string& w = norm_[k];
    const std::string& raw = raw_[i];
    std::vector<std::string> f;
    f.reserve(20);
    f.emplace_back("b");
    f.push_back("w=" + w);
    f.push_back("s3=" + suffix(w, 3));
    f.push_back("s2=" + suffix(w, 2));
    f.push_back("p1=" + w.substr(0, 1));
    f.push_back("sh=" + shape_of(raw));
    const bool upper = !raw.empty() && std::isupper(static_cast<unsigned char>(raw[0]));
    f.push_back(std::string("cap=") + (i == 0 ? "0" : "1") + (upper ? "U" : "l"));
    f.push_back("t1=" + std::string(prev));
    f.push_back("t2=" + std::string(prev2));
    f.push_back("t12=" + std::string(prev) + "|" + std::string(prev2));
    f.push_back("t1w=" + std::string(prev) + "|" + w);
    f.push_back("w-1=" + norm_[k - 1]);
    f.push_back("s3-1=" + suffix(norm_[k - 1], 3));
    f.push_back("w-2=" + norm_[k - 2]);
    f.push_back("w+1=" + norm_[k + 1]);
    f.push_back("s3+1=" + suffix(norm_[k + 1], 3));
    f.push_back("w+2=" + norm_[k + 2]);
    f.push_back("ww+1=" + w + "|" + norm_[k + 1]);
    return f;
  }

  std::size_t size() const { return raw_.size(); }
  const std::string& lower(std::size_t i) const { return norm_[i + 2]; }

 private:
  std::vector<std::string> norm_;
  std::vector<std::string> raw_;
};

std::string_view tag_feature_name(std::optional<PosTag> tag, bool second) {
  if (!tag) return second ? "-START2-" : "-START-";
  return tag_name(*tag);
}

}  // namespace

// ---------------------------------------------------------------------------
// Tag names

std::string_view tag_name(PosTag tag) {
  return kTagNames[static_cast<std::size_t>(tag)];
}

std::optional<PosTag> parse_tag(std::string_view name) {
  for (std::size_t i = 0; i < kTagCount; ++i) {
    if (kTagNames[i] == name) return kAllTags[i];
  }
  return std::nullopt;
}

std::span<const PosTag> all_tags() { return kAllTags; }

std::string_view unit_kind_name(UnitKind kind) {
  switch (kind) {
    case UnitKind::kNoun: return "noun";
    case UnitKind::kNounPhrase: return "np";
    case UnitKind::kVerb: return "verb";
  }
  return "noun";
}

std::optional<UnitKind> parse_unit_kind(std::string_view name) {
  if (name == "noun" || name == "nouns" || name == "N") return UnitKind::kNoun;
  if (name == "np" || name == "noun-phrase" || name == "NP") return UnitKind::kNounPhrase;
  if (name == "verb" || name == "verbs" || name == "V") return UnitKind::kVerb;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Tokenize

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) tokenize_chunk(out, text, start, i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Model

PosTag TaggerModel::choose(const Weights& scores, const std::string& lower) const {
  float best = scores[0];
  for (float s : scores) best = std::max(best, s);
  auto is_best = [&](PosTag t) { return scores[static_cast<std::size_t>(t)] == best; };
  if (auto it = lexicon_.find(lower); it != lexicon_.end() && is_best(it->second)) {
    return it->second;
  }
  if (is_best(default_tag_)) return default_tag_;
  for (PosTag t : kAllTags) {
    if (is_best(t)) return t;
  }
  return default_tag_;
}

std::vector<PosTag> TaggerModel::predict(std::span<const std::string> words) const {
  if (!loaded_) throw Error(ErrorCode::kModelNotLoaded, "tagger model not loaded");
  FeatureContext ctx(words);
  std::vector<PosTag> out;
  out.reserve(words.size());
  std::optional<PosTag> prev, prev2;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    Weights scores{};
    for (const auto& f : ctx.features(i, tag_feature_name(prev, false),
                                      tag_feature_name(prev2, true))) {
      auto it = weights_.find(f);
      if (it == weights_.end()) continue;
      for (std::size_t t = 0; t < kTagCount; ++t) scores[t] += it->second[t];
    }
    PosTag guess = choose(scores, ctx.lower(i));
    out.push_back(guess);
    prev2 = prev;
    prev = guess;
  }
  return out;
}

std::string TaggerModel::serialize() const {
  if (!loaded_) throw Error(ErrorCode::kModelNotLoaded, "cannot serialize an unloaded model");
  std::ostringstream out;
  out << kModelMagic << '\n';
  out << "version\t" << version_ << '\n';
  out << "tags";
  for (auto name : kTagNames) out << '\t' << name;
  out << '\n';
  out << "default\t" << tag_name(default_tag_) << '\n';
  std::map<std::string, PosTag> lex(lexicon_.begin(), lexicon_.end());
  out << "lexicon\t" << lex.size() << '\n';
  for (const auto& [word, t] : lex) out << word << '\t' << tag_name(t) << '\n';
  std::map<std::string, Weights> w(weights_.begin(), weights_.end());
  out << "weights\t" << w.size() << '\n';
  char buf[32];
  for (const auto& [feat, ws] : w) {
    out << feat;
    for (float x : ws) {
      std::snprintf(buf, sizeof(buf), "%.9g", static_cast<double>(x));
      out << '\t' << buf;
    }
    out << '\n';
  }
  return out.str();
}

void TaggerModel::save(const std::filesystem::path& path) const {
  detail::write_file(path, serialize());
}

TaggerModel TaggerModel::parse(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::size_t pos = 0; pos < text.size();) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  auto bad = [](const std::string& why) {
    return Error(ErrorCode::kParse, "tagger model: " + why);
  };
  auto split = [](std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
      std::size_t tab = line.find('\t', pos);
      fields.push_back(line.substr(pos, tab == std::string_view::npos ? tab : tab - pos));
      if (tab == std::string_view::npos) break;
      pos = tab + 1;
    }
    return fields;
  };
  auto tag_or_throw = [&](std::string_view name) {
    auto t = parse_tag(name);
    if (!t) throw bad("unknown tag '" + std::string(name) + "'");
    return *t;
  };
  std::size_t li = 0;
  auto next = [&]() -> std::string_view {
    if (li >= lines.size()) throw bad("unexpected end of file");
    return lines[li++];
  };

  if (next() != kModelMagic) throw bad("missing header line");
  TaggerModel model;
  auto version = split(next());
  if (version.size() != 2 || version[0] != "version") throw bad("missing version");
  model.version_ = std::string(version[1]);
  auto tags = split(next());
  if (tags.size() != kTagCount + 1 || tags[0] != "tags") throw bad("bad tag list");
  for (std::size_t i = 0; i < kTagCount; ++i) {
    if (tags[i + 1] != kTagNames[i]) throw bad("tag set differs from this build");
  }
  auto def = split(next());
  if (def.size() != 2 || def[0] != "default") throw bad("missing default tag");
  model.default_tag_ = tag_or_throw(def[1]);

  auto count_of = [&](std::string_view key) {
    auto f = split(next());
    if (f.size() != 2 || f[0] != key) throw bad("missing " + std::string(key) + " section");
    return std::strtoull(std::string(f[1]).c_str(), nullptr, 10);
  };
  const auto n_lex = count_of("lexicon");
  for (std::uint64_t i = 0; i < n_lex; ++i) {
    auto f = split(next());
    if (f.size() != 2) throw bad("bad lexicon line");
    model.lexicon_.emplace(std::string(f[0]), tag_or_throw(f[1]));
  }
  const auto n_w = count_of("weights");
  for (std::uint64_t i = 0; i < n_w; ++i) {
    auto f = split(next());
    if (f.size() != kTagCount + 1) throw bad("bad weight line");
    Weights w{};
    for (std::size_t t = 0; t < kTagCount; ++t) {
      std::string field(f[t + 1]);
      char* endp = nullptr;
      w[t] = std::strtof(field.c_str(), &endp);
      if (endp == field.c_str()) throw bad("bad weight value");
    }
    model.weights_.emplace(std::string(f[0]), w);
  }
  model.loaded_ = true;
  return model;
}

TaggerModel TaggerModel::load(const std::filesystem::path& path) {
  try {
    return parse(detail::read_file(path));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

// ---------------------------------------------------------------------------
// Tagging and units

std::vector<Token> tag(const TaggerModel& model, std::span<const Token> tokens) {
  if (!model.loaded()) throw Error(ErrorCode::kModelNotLoaded, "tagger model not loaded");
  std::vector<std::string> words;
  words.reserve(tokens.size());
  for (const auto& t : tokens) words.push_back(t.surface);
  auto tags = model.predict(words);
  std::vector<Token> out(tokens.begin(), tokens.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i].tag = tags[i];
  return out;
}

std::vector<TextUnit> units_from_tags(std::string_view text,
                                      std::span<const Token> tagged,
                                      UnitKind kind) {
  auto is = [&](std::size_t i, PosTag t) { return tagged[i].tag == t; };
  auto is_noun = [&](std::size_t i) { return is(i, PosTag::kNoun) || is(i, PosTag::kPropn); };
  auto span_text = [&](std::size_t first, std::size_t last) {
    std::size_t a = tagged[first].start;
    std::size_t b = tagged[last].end;
    if (b <= text.size() && a <= b) return std::string(text.substr(a, b - a));
    // Tokens not sliced from text: join surfaces.
    std::string s;
    for (std::size_t i = first; i <= last; ++i) {
      if (i > first) s += ' ';
      s += tagged[i].surface;
    }
    return s;
  };

  std::vector<TextUnit> units;
  const std::size_t n = tagged.size();
  switch (kind) {
    case UnitKind::kNoun:
      for (std::size_t i = 0; i < n; ++i) {
        if (is_noun(i)) units.push_back({tagged[i].surface, kind, i, i});
      }
      break;
    case UnitKind::kVerb:
      for (std::size_t i = 0; i < n; ++i) {
        if (is(i, PosTag::kVerb)) units.push_back({tagged[i].surface, kind, i, i});
      }
      break;
    case UnitKind::kNounPhrase:
      for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        if (j < n && is(j, PosTag::kDet)) ++j;
        if (j < n && is(j, PosTag::kNum)) ++j;
        while (j < n && is(j, PosTag::kAdj)) ++j;
        std::size_t k = j;
        while (k < n && is_noun(k)) ++k;
        if (k > j) {
          units.push_back({span_text(i, k - 1), kind, i, k - 1});
          i = k;
        } else {
          ++i;
        }
      }
      break;
  }
  return units;
}

std::vector<TextUnit> extract_units(const TaggerModel& model,
                                    std::string_view text, UnitKind kind) {
  auto tokens = tokenize(text);
  auto tagged = tag(model, tokens);
  return units_from_tags(text, tagged, kind);
}

// ---------------------------------------------------------------------------
// Corpus

std::vector<TaggedSentence> parse_tagged_corpus(std::string_view text) {
  std::vector<TaggedSentence> corpus;
  TaggedSentence current;
  std::size_t line_no = 0;
  auto flush = [&]() {
    if (!current.words.empty()) corpus.push_back(std::move(current));
    current = {};
  };
  for (std::size_t pos = 0; pos <= text.size();) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      flush();
    } else if (line.front() != '#') {
      std::size_t tab = line.find('\t');
      if (tab == std::string_view::npos || tab == 0) {
        throw Error(ErrorCode::kParse,
                    "tagged corpus line " + std::to_string(line_no) + ": expected surface<TAB>tag");
      }
      current.words.emplace_back(line.substr(0, tab));
      current.tags.emplace_back(line.substr(tab + 1));
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  flush();
  return corpus;
}

std::vector<TaggedSentence> read_tagged_corpus(const std::filesystem::path& path) {
  return parse_tagged_corpus(detail::read_file(path));
}

// ---------------------------------------------------------------------------
// Training

class PerceptronTrainer {
 public:
  explicit PerceptronTrainer(TaggerModel& model) : model_(model) {}

  TaggerModel::Weights score(const std::vector<std::string>& feats) const {
    TaggerModel::Weights s{};
    for (const auto& f : feats) {
      auto it = params_.find(f);
      if (it == params_.end()) continue;
      for (std::size_t t = 0; t < kTagCount; ++t) s[t] += static_cast<float>(it->second.w[t]);
    }
    return s;
  }

  void update(PosTag truth, PosTag guess, const std::vector<std::string>& feats) {
    ++step_;
    if (truth == guess) return;
    for (const auto& f : feats) {
      Param& p = params_[f];
      bump(p, static_cast<std::size_t>(truth), 1.0);
      bump(p, static_cast<std::size_t>(guess), -1.0);
    }
  }

  void finish() {
    model_.weights_.clear();
    for (auto& [feat, p] : params_) {
      TaggerModel::Weights avg{};
      bool nonzero = false;
      for (std::size_t t = 0; t < kTagCount; ++t) {
        double total = p.total[t] + (step_ - p.stamp[t]) * p.w[t];
        avg[t] = static_cast<float>(total / static_cast<double>(step_));
        nonzero = nonzero || avg[t] != 0.0f;
      }
      if (nonzero) model_.weights_.emplace(feat, avg);
    }
  }

 private:
  struct Param {
    std::array<double, kTagCount> w{};
    std::array<double, kTagCount> total{};
    std::array<std::uint64_t, kTagCount> stamp{};
  };

  void bump(Param& p, std::size_t t, double delta) {
    p.total[t] += (step_ - p.stamp[t]) * p.w[t];
    p.stamp[t] = step_;
    p.w[t] += delta;
  }

  TaggerModel& model_;
  std::unordered_map<std::string, Param> params_;
  std::uint64_t step_ = 0;
};

double token_accuracy(const TaggerModel& model,
                      std::span<const TaggedSentence> corpus) {
  std::size_t total = 0;
  std::size_t correct = 0;
  for (const auto& s : corpus) {
    auto pred = model.predict(s.words);
    for (std::size_t i = 0; i < pred.size(); ++i) {
      ++total;
      if (tag_name(pred[i]) == s.tags[i]) ++correct;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

TrainResult train_tagger(std::span<const TaggedSentence> corpus,
                         const TrainOptions& options) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "no sentences to train on");
  if (options.epochs < 0) throw Error(ErrorCode::kInvalidArgument, "epochs must be >= 0");

  struct GoldSentence {
    const TaggedSentence* source;
    std::vector<PosTag> tags;
  };
  std::vector<GoldSentence> train, held_out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& s = corpus[i];
    if (s.words.size() != s.tags.size()) {
      throw Error(ErrorCode::kInvalidArgument, "sentence " + std::to_string(i) +
                                                   " has mismatched word/tag counts");
    }
    GoldSentence g{&s, {}};
    for (const auto& name : s.tags) {
      auto t = parse_tag(name);
      if (!t) {
        throw Error(ErrorCode::kUnknownTagInCorpus,
                    "'" + name + "' in sentence " + std::to_string(i));
      }
      g.tags.push_back(*t);
    }
    bool hold = options.hold_out_every > 0 && (i + 1) % options.hold_out_every == 0;
    (hold ? held_out : train).push_back(std::move(g));
  }
  if (train.empty()) throw Error(ErrorCode::kEmptyCorpus, "hold-out leaves no training data");

  TrainResult result;
  TaggerModel& model = result.model;

  // Lexicon and default tag from gold counts.
  std::map<std::string, std::array<std::size_t, kTagCount>> counts;
  std::array<std::size_t, kTagCount> tag_totals{};
  for (const auto& g : train) {
    for (std::size_t i = 0; i < g.tags.size(); ++i) {
      auto t = static_cast<std::size_t>(g.tags[i]);
      ++counts[normalize_word(g.source->words[i])][t];
      ++tag_totals[t];
    }
  }
  for (const auto& [word, c] : counts) {
    auto best = std::max_element(c.begin(), c.end()) - c.begin();
    model.lexicon_.emplace(word, kAllTags[static_cast<std::size_t>(best)]);
  }
  model.default_tag_ = kAllTags[static_cast<std::size_t>(
      std::max_element(tag_totals.begin(), tag_totals.end()) - tag_totals.begin())];
  model.version_ = "perceptron epochs=" + std::to_string(options.epochs) +
                   " seed=" + std::to_string(options.seed) +
                   " sentences=" + std::to_string(train.size());
  model.loaded_ = true;

  PerceptronTrainer trainer(model);
  Rng rng(options.seed);
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t idx : order) {
      const auto& g = train[idx];
      FeatureContext ctx(g.source->words);
      std::optional<PosTag> prev, prev2;
      for (std::size_t i = 0; i < ctx.size(); ++i) {
        auto feats = ctx.features(i, tag_feature_name(prev, false),
                                  tag_feature_name(prev2, true));
        PosTag guess = model.choose(trainer.score(feats), ctx.lower(i));
        trainer.update(g.tags[i], guess, feats);
        prev2 = prev;
        prev = guess;
      }
    }
  }
  if (options.epochs > 0) trainer.finish();

  std::vector<TaggedSentence> train_view, held_view;
  for (const auto& g : train) train_view.push_back(*g.source);
  for (const auto& g : held_out) held_view.push_back(*g.source);
  result.train_accuracy = token_accuracy(model, train_view);
  if (!held_view.empty()) result.held_out_accuracy = token_accuracy(model, held_view);
  return result;
}

}  // namespace fgrain
