// Tokenizer, rule-based POS tagger and noun lemmatizer.
#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "forecite/textnorm.hpp"

namespace forecite {

namespace {

// ---------------------------------------------------------------------------
// UTF-8

struct Codepoint {
  char32_t value;
  std::size_t length;
};

Codepoint decode_at(std::string_view text, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(text[i]);
  auto cont = [&](std::size_t k) -> int {
    if (i + k >= text.size()) return -1;
    const auto b = static_cast<unsigned char>(text[i + k]);
    return (b & 0xC0) == 0x80 ? (b & 0x3F) : -1;
  };
  if (b0 < 0x80) return {b0, 1};
  if ((b0 & 0xE0) == 0xC0) {
    const int c1 = cont(1);
    if (c1 >= 0) {
      const char32_t cp = (char32_t(b0 & 0x1F) << 6) | char32_t(c1);
      if (cp >= 0x80) return {cp, 2};
    }
  } else if ((b0 & 0xF0) == 0xE0) {
    const int c1 = cont(1), c2 = c1 >= 0 ? cont(2) : -1;
    if (c2 >= 0) {
      const char32_t cp = (char32_t(b0 & 0x0F) << 12) | (char32_t(c1) << 6) | char32_t(c2);
      if (cp >= 0x800) return {cp, 3};
    }
  } else if ((b0 & 0xF8) == 0xF0) {
    const int c1 = cont(1), c2 = c1 >= 0 ? cont(2) : -1, c3 = c2 >= 0 ? cont(3) : -1;
    if (c3 >= 0) {
      const char32_t cp =
          (char32_t(b0 & 0x07) << 18) | (char32_t(c1) << 12) | (char32_t(c2) << 6) | char32_t(c3);
      if (cp >= 0x10000 && cp <= 0x10FFFF) return {cp, 4};
    }
  }
  // Invalid byte: treat as an opaque word character.
  return {0xFFFD, 1};
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

enum class CharClass { Space, Punct, Word };

CharClass classify(char32_t cp) {
  if (cp < 0x80) {
    if (cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' || cp == '\v') return CharClass::Space;
    if (cp < 0x20 || cp == 0x7F) return CharClass::Space;
    if ((cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || cp == '_') {
      return CharClass::Word;
    }
    return CharClass::Punct;
  }
  if (cp == 0xA0 || cp == 0x1680 || (cp >= 0x2000 && cp <= 0x200B) || cp == 0x2028 || cp == 0x2029 ||
      cp == 0x202F || cp == 0x205F || cp == 0x3000 || cp == 0xFEFF) {
    return CharClass::Space;
  }
  if (cp >= 0xA1 && cp <= 0xBF) {
    switch (cp) {
      case 0xAA: case 0xB2: case 0xB3: case 0xB5: case 0xB9: case 0xBA: case 0xBC: case 0xBD: case 0xBE:
        return CharClass::Word;
      default:
        return CharClass::Punct;
    }
  }
  if (cp == 0xD7 || cp == 0xF7) return CharClass::Punct;
  if ((cp >= 0x2010 && cp <= 0x2027) || (cp >= 0x2030 && cp <= 0x205E)) return CharClass::Punct;
  if (cp >= 0x2190 && cp <= 0x22FF) return CharClass::Punct;
  if ((cp >= 0x3001 && cp <= 0x3003) || (cp >= 0x3008 && cp <= 0x3011)) return CharClass::Punct;
  if ((cp >= 0xFF01 && cp <= 0xFF0F) || (cp >= 0xFF1A && cp <= 0xFF20)) return CharClass::Punct;
  return CharClass::Word;
}

bool is_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

bool is_letter_like(char32_t cp) { return classify(cp) == CharClass::Word && !is_digit(cp); }

bool is_hyphen(char32_t cp) { return cp == '-' || cp == 0x2010 || cp == 0x2011; }

bool is_apostrophe(char32_t cp) { return cp == '\'' || cp == 0x2019; }

char32_t lower_cp(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp < 0xC0) return cp;
  if (cp <= 0xDE && cp != 0xD7) return cp + 32;
  if (cp >= 0x100 && cp <= 0x137) return cp | 1;
  if (cp >= 0x139 && cp <= 0x148) return (cp & 1) ? cp + 1 : cp;
  if (cp >= 0x14A && cp <= 0x177) return cp | 1;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x179 && cp <= 0x17E) return (cp & 1) ? cp + 1 : cp;
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 32;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 32;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 80;
  return cp;
}

bool is_upper_cp(char32_t cp) { return lower_cp(cp) != cp; }

std::vector<char32_t> decode(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    const Codepoint c = decode_at(text, i);
    out.push_back(c.value);
    i += c.length;
  }
  return out;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// ---------------------------------------------------------------------------
// Lexicons

using WordSet = std::unordered_set<std::string_view>;

const std::unordered_map<std::string_view, Pos>& closed_class() {
  static const auto* table = [] {
    auto* t = new std::unordered_map<std::string_view, Pos>;
    auto add = [&](std::initializer_list<std::string_view> words, Pos pos) {
      for (auto w : words) t->emplace(w, pos);
    };
    add({"a", "an", "the", "this", "that", "these", "those", "each", "every", "some", "any", "all", "no",
         "both", "either", "neither", "another", "such", "my", "your", "his", "her", "its", "our", "their"},
        Pos::Det);
    add({"of", "in", "on", "at", "by", "for", "with", "from", "to", "into", "onto", "upon", "about", "above",
         "across", "after", "against", "along", "among", "amongst", "around", "as", "before", "behind",
         "below", "beneath", "beside", "besides", "between", "beyond", "despite", "down", "during", "except",
         "inside", "like", "near", "off", "out", "outside", "over", "per", "since", "through", "throughout",
         "toward", "towards", "under", "underneath", "unlike", "until", "up", "versus", "vs", "via", "within",
         "without", "than"},
        Pos::Adp);
    add({"and", "or", "but", "nor", "yet", "so", "if", "because", "while", "although", "though", "whether",
         "unless", "whereas", "plus", "&"},
        Pos::Conj);
    add({"i", "me", "myself", "you", "yourself", "yourselves", "yours", "he", "him", "himself", "she",
         "hers", "herself", "it", "itself", "we", "us", "ours", "ourselves", "they", "them", "theirs",
         "themselves", "what", "which", "who", "whom", "whose", "when", "where", "why", "how", "not", "very",
         "too", "also", "only", "just", "then", "there", "here", "now", "again", "further", "once", "more",
         "most", "less", "least", "much", "many", "few", "several", "other", "same", "own", "however",
         "thus", "hence", "therefore", "even", "still", "already", "often", "always", "never", "ever",
         "rather", "quite", "almost", "instead", "whose", "whereby", "wherein", "s", "t", "d", "ll", "m", "o",
         "re", "ve", "y", "ain", "ma"},
        Pos::Other);
    add({"am", "is", "are", "was", "were", "be", "been", "being", "have", "has", "had", "having", "do",
         "does", "did", "doing", "done", "can", "could", "will", "would", "shall", "should", "may", "might",
         "must", "using", "based", "get", "gets", "got", "make", "makes", "made", "let", "lets"},
        Pos::Verb);
    add({"zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "hundred",
         "thousand", "million", "billion"},
        Pos::Num);
    add({"deep", "new", "novel", "large", "small", "big", "high", "low", "fast", "slow", "simple", "good",
         "better", "best", "robust", "sparse", "dense", "general", "multiple", "single", "different",
         "recent", "old", "early", "late", "long", "short", "hard", "easy", "open", "free", "full", "hidden",
         "real", "true", "false", "strong", "weak", "wide", "broad", "rich", "fine", "main", "major", "minor",
         "random", "linear", "nonlinear", "non-linear", "similar", "particular", "regular", "modular",
         "circular", "molecular", "popular", "latent", "efficient", "recurrent", "independent", "consistent",
         "coherent", "sufficient", "transparent", "frequent", "persistent", "explicit", "implicit", "compact",
         "discrete", "accurate", "unsupervised", "supervised", "semi-supervised", "self-supervised", "quick",
         "scalable", "improved", "generalized", "unified", "joint", "hierarchical", "convex", "non-convex",
         "stochastic", "dynamic", "static", "distributed", "parallel", "federated", "approximate", "exact",
         "adaptive", "first", "second", "third", "last", "next", "higher", "lower", "larger", "smaller",
         "faster", "efficient", "arbitrary", "various", "certain", "possible", "important", "secure",
         "private", "public", "optimal", "suboptimal", "near-optimal", "polynomial", "exponential", "online",
         "offline", "end-to-end", "fully", "pre-trained", "pretrained"},
        Pos::Adj);
    return t;
  }();
  return *table;
}

const WordSet& verb_stems() {
  static const WordSet stems = {
      "learn", "train", "filter", "use", "improve", "generate", "detect", "classify", "predict", "estimate",
      "optimize", "optimise", "model", "map", "match", "rank", "search", "sample", "segment", "track",
      "label", "embed", "encode", "decode", "compress", "transfer", "adapt", "align", "attend", "compute",
      "process", "represent", "reason", "parse", "translate", "summarize", "summarise", "recognize",
      "recognise", "identify", "extract", "mine", "cluster", "solve", "plan", "schedule", "route", "control",
      "regularize", "normalize", "initialize", "prune", "quantize", "distill", "augment", "fuse", "pool",
      "scale", "test", "evaluate", "measure", "compare", "analyze", "analyse", "design", "build",
      "construct", "develop", "apply", "combine", "integrate", "select", "rewrite", "generalize",
      "understand", "explain", "interpret", "visualize", "simulate", "approximate", "accelerate", "boost",
      "bound", "check", "verify", "prove", "infer", "propagate", "update", "forget", "remember", "read",
      "write", "answer", "ask", "program", "code", "hash", "index", "store", "retrieve", "recommend",
      "personalize", "crowdsource", "annotate", "tag", "tokenize", "stem", "weight", "penalize", "reward",
      "explore", "exploit", "imitate", "pretrain", "tune", "fine-tune", "cache", "share", "distribute",
      "parallelize", "coordinate", "communicate", "cooperate", "compete", "negotiate", "transform",
      "convolve", "define", "describe", "discover", "enable", "ensure", "find", "focus", "follow", "handle",
      "help", "increase", "introduce", "investigate", "lead", "manage", "minimize", "maximize", "move",
      "observe", "obtain", "perform", "propose", "provide", "reduce", "require", "show", "study", "support",
      "take", "vary", "work", "achieve", "address", "allow", "base", "consider", "contain", "create",
      "depend", "derive", "determine", "establish", "extend", "give", "include", "involve", "keep", "look",
      "need", "present", "produce", "receive", "relate", "remain", "report", "result", "run", "see", "seem",
      "set", "start", "state", "suggest", "turn", "change", "grow", "open", "close", "call", "cover", "draw",
      "drive", "fit", "hold", "join", "link", "pack", "print", "push", "pull", "put", "raise", "reach",
      "reconstruct", "render", "replace", "resolve", "sort", "split", "spread", "stack", "stream",
      "structure", "swap", "switch", "think", "transmit", "trigger", "unify", "warp", "weigh", "wrap",
      "zoom", "crawl", "browse", "click", "query", "debug", "deploy", "fork", "merge", "patch", "release",
      "supervise", "speak", "name", "price", "bid", "localize", "caption", "paraphrase", "ground", "rate",
      "shape", "color", "colour", "paint", "shade", "sketch", "sense", "forecast", "exchange", "enhance",
      "refine", "correct", "connect", "collect", "protect", "attack", "defend", "secure", "monitor",
      "understand", "recover", "restore", "denoise", "deblur", "inpaint", "warm", "cool", "mask", "pretend",
      "reuse", "recycle", "revisit", "rethink", "unroll", "unlock", "broadcast", "multiplex", "decompose",
      "factorize", "factorise", "aggregate", "partition", "bootstrap", "benchmark", "characterize",
      "quantify", "certify", "specify", "simplify", "unify", "amplify", "modify", "justify", "satisfy",
      "validate", "calibrate", "interpolate", "extrapolate", "navigate", "manipulate", "grasp", "walk",
      "fly", "plan", "drop", "stop", "step", "ship", "wrap", "scan", "skip", "slip", "trim", "chat"};
  return stems;
}

bool known_stem(std::string_view stem) {
  if (stem.size() < 2) return false;
  const auto& stems = verb_stems();
  if (stems.contains(stem)) return true;
  if (stems.contains(std::string(stem) + "e")) return true;
  // planning -> plan, mapped -> map
  if (stem.size() >= 3 && stem[stem.size() - 1] == stem[stem.size() - 2] &&
      stems.contains(stem.substr(0, stem.size() - 1))) {
    return true;
  }
  // classified -> classify
  if (ends_with(stem, "i") && stems.contains(std::string(stem.substr(0, stem.size() - 1)) + "y")) return true;
  return false;
}

const WordSet& ly_nouns() {
  static const WordSet words = {"family", "anomaly", "assembly", "supply", "reply", "italy", "poly",
                                "monopoly", "ally", "rally", "butterfly", "apply", "imply", "comply",
                                "multiply", "july", "bully", "belly", "jelly", "holly", "lily", "homily",
                                "oligopoly", "firefly", "dragonfly", "doily"};
  return words;
}

constexpr std::array<std::string_view, 12> kAdjSuffixes = {"al", "ive", "ous", "ic", "able", "ible",
                                                            "ful", "less", "ary", "ian", "ean", "ish"};

// Provisional classes resolved by the contextual pass.
enum class Provisional { Fixed, AdjCandidate, IngCandidate, EdCandidate };

bool is_number_token(std::string_view tok) {
  if (tok.empty()) return false;
  std::size_t i = 0;
  bool digits = false;
  while (i < tok.size() && (std::isdigit(static_cast<unsigned char>(tok[i])) || tok[i] == '.' || tok[i] == ',')) {
    if (std::isdigit(static_cast<unsigned char>(tok[i]))) digits = true;
    ++i;
  }
  if (!digits) return false;
  if (i == tok.size()) return true;
  const auto rest = tok.substr(i);
  return rest == "st" || rest == "nd" || rest == "rd" || rest == "th" || rest == "s";
}

bool all_punct(std::string_view tok) {
  if (tok.empty()) return false;
  for (std::size_t i = 0; i < tok.size();) {
    const Codepoint c = decode_at(tok, i);
    if (classify(c.value) != CharClass::Punct) return false;
    i += c.length;
  }
  return true;
}

bool has_internal_caps(std::string_view tok) {
  const auto cps = decode(tok);
  for (std::size_t i = 1; i < cps.size(); ++i) {
    if (is_upper_cp(cps[i])) return true;
  }
  return false;
}

bool starts_upper(std::string_view tok) {
  if (tok.empty()) return false;
  return is_upper_cp(decode_at(tok, 0).value);
}

bool is_sentence_break(std::string_view tok) { return tok == "." || tok == "!" || tok == "?" || tok == ":"; }

bool nominal(Pos pos) { return pos == Pos::Noun || pos == Pos::Propn || pos == Pos::Adj || pos == Pos::Num; }

bool opens_clause(Pos pos) {
  return pos == Pos::Adp || pos == Pos::Conj || pos == Pos::Punct || pos == Pos::Verb || pos == Pos::Other;
}

// ---------------------------------------------------------------------------
// Lemmatization tables

const std::unordered_map<std::string_view, std::string_view>& irregular_plurals() {
  static const std::unordered_map<std::string_view, std::string_view> table = {
      {"analyses", "analysis"},   {"hypotheses", "hypothesis"}, {"theses", "thesis"},
      {"syntheses", "synthesis"}, {"diagnoses", "diagnosis"},   {"crises", "crisis"},
      {"axes", "axis"},           {"biases", "bias"},           {"aliases", "alias"},
      {"viruses", "virus"},       {"statuses", "status"},       {"corpora", "corpus"},
      {"indices", "index"},       {"matrices", "matrix"},       {"vertices", "vertex"},
      {"appendices", "appendix"}, {"criteria", "criterion"},    {"phenomena", "phenomenon"},
      {"children", "child"},      {"men", "man"},               {"women", "woman"},
      {"feet", "foot"},           {"teeth", "tooth"},           {"mice", "mouse"},
      {"geese", "goose"},         {"lemmata", "lemma"},         {"schemata", "schema"},
      {"stimuli", "stimulus"},    {"radii", "radius"},          {"nuclei", "nucleus"},
      {"foci", "focus"},          {"loci", "locus"},            {"movies", "movie"},
      {"cookies", "cookie"},      {"zombies", "zombie"},        {"calories", "calorie"},
      {"caches", "cache"},        {"niches", "niche"},          {"quizzes", "quiz"},
      {"gases", "gas"},           {"lenses", "lens"},           {"buses", "bus"},
  };
  return table;
}

const WordSet& invariant_nouns() {
  static const WordSet words = {"bias", "alias", "gas", "atlas", "canvas", "lens", "news", "bayes",
                                "series", "species", "chaos", "cosmos", "ethos", "pathos", "kudos",
                                "data", "whereas", "perhaps", "always", "sometimes", "towards", "nowadays"};
  return words;
}

}  // namespace

std::string to_lower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    const Codepoint c = decode_at(text, i);
    if (c.value == 0xFFFD && c.length == 1) {
      out.push_back(text[i]);  // keep invalid bytes as-is
    } else {
      append_utf8(out, lower_cp(c.value));
    }
    i += c.length;
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t i = 0;
  char32_t prev = 0;  // last codepoint appended to current
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  while (i < text.size()) {
    const Codepoint c = decode_at(text, i);
    const std::string_view raw = text.substr(i, c.length);
    const CharClass cls = classify(c.value);
    if (cls == CharClass::Word) {
      current.append(raw);
      prev = c.value;
      i += c.length;
      continue;
    }
    if (cls == CharClass::Punct && !current.empty() && i + c.length < text.size()) {
      const char32_t next = decode_at(text, i + c.length).value;
      const bool joins = (is_hyphen(c.value) && classify(next) == CharClass::Word) ||
                         (is_apostrophe(c.value) && is_letter_like(prev) && is_letter_like(next)) ||
                         ((c.value == '.' || c.value == ',') && is_digit(prev) && is_digit(next));
      if (joins) {
        current.append(raw);
        prev = c.value;
        i += c.length;
        continue;
      }
    }
    flush();
    if (cls == CharClass::Punct) tokens.emplace_back(raw);
    prev = 0;
    i += c.length;
  }
  flush();
  return tokens;
}

std::vector<TaggedToken> pos_tag(std::span<const std::string> tokens) {
  const std::size_t n = tokens.size();
  std::vector<TaggedToken> out(n);
  std::vector<Provisional> prov(n, Provisional::Fixed);
  const auto& lexicon = closed_class();

  for (std::size_t i = 0; i < n; ++i) {
    const std::string& tok = tokens[i];
    const std::string lower = to_lower(tok);
    out[i].surface = tok;
    const bool initial = i == 0 || is_sentence_break(tokens[i - 1]);
    Pos& pos = out[i].pos;

    if (all_punct(tok)) {
      pos = Pos::Punct;
    } else if (is_number_token(lower)) {
      pos = Pos::Num;
    } else if (auto it = lexicon.find(lower); it != lexicon.end()) {
      pos = it->second;
    } else if (has_internal_caps(tok)) {
      pos = Pos::Propn;
    } else if (lower.size() >= 5 && ends_with(lower, "ly") && !ly_nouns().contains(lower)) {
      pos = Pos::Other;
    } else if (lower.size() >= 5 && ends_with(lower, "ing") && known_stem(std::string_view(lower).substr(0, lower.size() - 3))) {
      prov[i] = Provisional::IngCandidate;
    } else if (lower.size() >= 4 && ends_with(lower, "ed") && known_stem(std::string_view(lower).substr(0, lower.size() - 2))) {
      prov[i] = Provisional::EdCandidate;
    } else if (lower.size() >= 5 && std::any_of(kAdjSuffixes.begin(), kAdjSuffixes.end(),
                                                [&](std::string_view s) { return ends_with(lower, s); })) {
      prov[i] = Provisional::AdjCandidate;
    } else if (starts_upper(tok) && !initial) {
      pos = Pos::Propn;
    } else {
      pos = Pos::Noun;
    }
  }

  // Right to left, so each token sees the final tag of its right neighbour.
  for (std::size_t k = n; k-- > 0;) {
    if (prov[k] == Provisional::Fixed) continue;
    const bool has_next = k + 1 < n;
    const Pos next = has_next ? out[k + 1].pos : Pos::Punct;
    const bool next_nominal = has_next && nominal(next);
    switch (prov[k]) {
      case Provisional::AdjCandidate:
        out[k].pos = next_nominal ? Pos::Adj : Pos::Noun;
        break;
      case Provisional::EdCandidate:
        out[k].pos = next_nominal ? Pos::Adj : Pos::Verb;
        break;
      case Provisional::IngCandidate: {
        const bool clause_start = k == 0 || (prov[k - 1] == Provisional::Fixed && opens_clause(out[k - 1].pos));
        const bool takes_object = has_next && (next == Pos::Det || nominal(next));
        out[k].pos = clause_start && takes_object ? Pos::Verb : Pos::Noun;
        break;
      }
      case Provisional::Fixed:
        break;
    }
  }
  return out;
}

std::string lemmatize(std::string_view token, Pos pos) {
  std::string w = to_lower(token);
  if (pos != Pos::Noun && pos != Pos::Propn) return w;

  if (ends_with(w, "'s") || ends_with(w, "\xE2\x80\x99s")) {
    w.erase(w.size() - (w[w.size() - 2] == '\'' ? 2 : 4));
  } else if (ends_with(w, "s'")) {
    w.pop_back();
  }

  if (auto it = irregular_plurals().find(w); it != irregular_plurals().end()) return std::string(it->second);
  if (invariant_nouns().contains(w)) return w;
  if (w.size() <= 3) return w;
  if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is") || ends_with(w, "ics")) return w;

  if (ends_with(w, "ies")) {
    if (w.size() > 4) return w.substr(0, w.size() - 3) + "y";
    return w.substr(0, w.size() - 1);
  }
  if (ends_with(w, "sses") || ends_with(w, "xes") || ends_with(w, "zzes") || ends_with(w, "ches") ||
      ends_with(w, "shes")) {
    return w.substr(0, w.size() - 2);
  }
  if (ends_with(w, "s")) return w.substr(0, w.size() - 1);
  return w;
}

std::vector<TaggedToken> analyze_text(std::string_view text) {
  const auto tokens = tokenize(text);
  auto tagged = pos_tag(tokens);
  for (auto& t : tagged) t.lemma = lemmatize(t.surface, t.pos);
  return tagged;
}

}  // namespace forecite
