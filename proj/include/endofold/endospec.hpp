#pragma once

// Text format for endomorphism inputs.
//
//   gens: a b          generator names (rank >= 2)
//   a -> a b           one image line per generator
//   b -> b a
//   witness: a b a, c  optional: subgroup generators, comma-separated
//   twist: a           optional: inner twist word
//   max-n: 2           optional search bounds and caps
//   max-len: 4
//   cap: 64
//
// Tokens are whitespace-separated; an uppercase token is the inverse of its
// lowercase generator; '#' starts a comment.

#include "endofold/words.hpp"

namespace endofold {

struct EndoSpec {
  Endomorphism endo;
  std::vector<Word> witness;
  std::optional<Word> twist;
  int max_n = 2;
  int max_len = 4;
  int cap = 64;
};

struct ParseError : Error {
  int line;
  ParseError(int line_no, const std::string& what)
      : Error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

inline EndoSpec parse_endo(const std::string& text) {
  std::vector<std::string> names;
  std::vector<std::pair<int, std::string>> image_lines;  // (line no, text after ->)
  std::vector<std::string> image_gen;
  std::optional<std::string> witness_text, twist_text;
  std::optional<int> max_n, max_len, cap;
  int witness_line = 0, twist_line = 0;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);

    auto starts = [&](const std::string& key) {
      return line.rfind(key, 0) == 0;
    };
    auto after = [&](const std::string& key) { return line.substr(key.size()); };

    if (starts("gens:")) {
      std::istringstream g(after("gens:"));
      std::string tok;
      while (g >> tok) names.push_back(tok);
      if (names.size() < 2) throw ParseError(line_no, "need at least two generators");
      continue;
    }
    if (starts("witness:")) {
      witness_text = after("witness:");
      witness_line = line_no;
      continue;
    }
    if (starts("twist:")) {
      twist_text = after("twist:");
      twist_line = line_no;
      continue;
    }
    if (starts("max-n:")) {
      max_n = std::stoi(after("max-n:"));
      continue;
    }
    if (starts("max-len:")) {
      max_len = std::stoi(after("max-len:"));
      continue;
    }
    if (starts("cap:")) {
      cap = std::stoi(after("cap:"));
      continue;
    }
    auto arrow = line.find("->");
    if (arrow == std::string::npos) throw ParseError(line_no, "expected 'gen -> image'");
    std::string lhs = line.substr(0, arrow);
    std::istringstream l(lhs);
    std::string gen;
    if (!(l >> gen)) throw ParseError(line_no, "missing generator before '->'");
    std::string extra;
    if (l >> extra) throw ParseError(line_no, "one generator per image line");
    image_gen.push_back(gen);
    image_lines.emplace_back(line_no, line.substr(arrow + 2));
  }

  if (names.empty()) throw ParseError(line_no, "missing 'gens:' header");
  Basis basis(names);
  if (image_lines.size() != names.size())
    throw ParseError(line_no, "expected one image per generator, got " +
                                  std::to_string(image_lines.size()));

  std::vector<Word> images(names.size());
  std::vector<bool> seen(names.size(), false);
  for (std::size_t i = 0; i < image_lines.size(); ++i) {
    auto [ln, body] = image_lines[i];
    auto g = letter_of_token(basis, image_gen[i]);
    if (!g || *g < 0) throw ParseError(ln, "unknown generator '" + image_gen[i] + "'");
    std::size_t idx = static_cast<std::size_t>(*g - 1);
    if (seen[idx]) throw ParseError(ln, "duplicate image for '" + image_gen[i] + "'");
    seen[idx] = true;
    Word w;
    try {
      w = parse_word(basis, body);
    } catch (const Error& err) {
      throw ParseError(ln, err.what());
    }
    if (w.empty()) throw ParseError(ln, "image of '" + image_gen[i] + "' is empty");
    images[idx] = w;
  }

  EndoSpec spec;
  spec.endo = Endomorphism(basis, images);
  if (witness_text) {
    std::string cur;
    std::istringstream ws(*witness_text);
    std::string piece;
    auto flush = [&]() {
      if (cur.find_first_not_of(" \t") == std::string::npos) return;
      try {
        spec.witness.push_back(parse_word(basis, cur));
      } catch (const Error& err) {
        throw ParseError(witness_line, err.what());
      }
      cur.clear();
    };
    for (char c : *witness_text) {
      if (c == ',') {
        flush();
        cur.clear();
      } else
        cur += c;
    }
    flush();
  }
  if (twist_text) {
    try {
      spec.twist = parse_word(basis, *twist_text);
    } catch (const Error& err) {
      throw ParseError(twist_line, err.what());
    }
  }
  if (max_n) spec.max_n = *max_n;
  if (max_len) spec.max_len = *max_len;
  if (cap) spec.cap = *cap;
  return spec;
}

}  // namespace endofold
