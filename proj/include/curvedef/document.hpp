#pragma once

// The cover-document text format and its parser. Line oriented, '#' starts a
// comment. Diagnostics carry line numbers; parsing never throws.
//
//   characteristic 3
//   group cyclic 2            # cyclic|elementary|pgroup <exponent-or-rank>
//   genus_base 1
//   p_rank_base 1             # optional
//   branch b1 2 1,4           # label, k, comma-separated lower jumps
//   option strict_schmid on   # on|off|true|false
//   option digit_order paper  # paper|reversed

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "curvedef/borne.hpp"
#include "curvedef/cover.hpp"

namespace curvedef {

struct DocumentOptions {
  bool strict_schmid = false;
  DigitOrder digit_order = DigitOrder::paper;
};

struct Diagnostic {
  int line = 0;
  std::string message;
};

struct ParsedDocument {
  std::optional<CoverSpec> spec;  // engaged iff there were no diagnostics
  DocumentOptions options;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return spec.has_value(); }
};

namespace docdetail {

inline std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::string cur;
  for (char ch : line) {
    if (ch == '#') break;
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      if (!cur.empty()) toks.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) toks.push_back(std::move(cur));
  return toks;
}

inline std::optional<Int> parse_int(const std::string& s, Int lo, Int hi) {
  Int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  if (v < lo || v > hi) return std::nullopt;
  return v;
}

inline std::optional<std::vector<Int>> parse_int_list(const std::string& s, Int lo, Int hi) {
  std::vector<Int> out;
  std::string cur;
  std::stringstream ss(s);
  while (std::getline(ss, cur, ',')) {
    auto v = parse_int(cur, lo, hi);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

}  // namespace docdetail

inline ParsedDocument parse_document(const std::string& text) {
  using namespace docdetail;
  ParsedDocument doc;
  std::optional<Int> characteristic, genus_base, p_rank_base;
  std::optional<GroupShape> group;
  std::vector<std::pair<int, BranchPoint>> branch_raw;  // line, point (filtration unchecked)

  auto diag = [&](int line, std::string msg) { doc.diagnostics.push_back({line, std::move(msg)}); };

  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& key = toks[0];
    if (key == "characteristic") {
      if (toks.size() != 2) { diag(lineno, "characteristic takes one integer"); continue; }
      auto v = parse_int(toks[1], 2, 1'000'000);
      if (!v) { diag(lineno, "bad characteristic '" + toks[1] + "'"); continue; }
      if (characteristic) { diag(lineno, "duplicate characteristic"); continue; }
      characteristic = v;
    } else if (key == "group") {
      if (toks.size() != 3) { diag(lineno, "group takes a shape and an exponent/rank"); continue; }
      GroupKind kind;
      if (toks[1] == "cyclic") kind = GroupKind::cyclic;
      else if (toks[1] == "elementary") kind = GroupKind::elementary_abelian;
      else if (toks[1] == "pgroup") kind = GroupKind::generic_pgroup;
      else { diag(lineno, "unknown group shape '" + toks[1] + "' (cyclic|elementary|pgroup)"); continue; }
      auto e = parse_int(toks[2], 1, 12);
      if (!e) { diag(lineno, "bad group exponent/rank '" + toks[2] + "' (1..12)"); continue; }
      if (group) { diag(lineno, "duplicate group"); continue; }
      group = GroupShape{kind, *e};
    } else if (key == "genus_base") {
      if (toks.size() != 2) { diag(lineno, "genus_base takes one integer"); continue; }
      auto v = parse_int(toks[1], 0, 1'000'000);
      if (!v) { diag(lineno, "bad genus_base '" + toks[1] + "'"); continue; }
      if (genus_base) { diag(lineno, "duplicate genus_base"); continue; }
      genus_base = v;
    } else if (key == "p_rank_base") {
      if (toks.size() != 2) { diag(lineno, "p_rank_base takes one integer"); continue; }
      auto v = parse_int(toks[1], 0, 1'000'000);
      if (!v) { diag(lineno, "bad p_rank_base '" + toks[1] + "'"); continue; }
      if (p_rank_base) { diag(lineno, "duplicate p_rank_base"); continue; }
      p_rank_base = v;
    } else if (key == "branch") {
      if (toks.size() != 4) { diag(lineno, "branch takes: label k jumps"); continue; }
      auto k = parse_int(toks[2], 1, 12);
      if (!k) { diag(lineno, "bad branch k '" + toks[2] + "' (1..12)"); continue; }
      auto jumps = parse_int_list(toks[3], 1, 1'000'000);
      if (!jumps) { diag(lineno, "bad jump list '" + toks[3] + "'"); continue; }
      BranchPoint b;
      b.label = toks[1];
      b.filt.k = *k;
      b.filt.jumps = *jumps;
      branch_raw.emplace_back(lineno, std::move(b));
    } else if (key == "option") {
      if (toks.size() != 3) { diag(lineno, "option takes a name and a value"); continue; }
      if (toks[1] == "strict_schmid") {
        if (toks[2] == "on" || toks[2] == "true") doc.options.strict_schmid = true;
        else if (toks[2] == "off" || toks[2] == "false") doc.options.strict_schmid = false;
        else diag(lineno, "strict_schmid: expected on|off");
      } else if (toks[1] == "digit_order") {
        if (toks[2] == "paper") doc.options.digit_order = DigitOrder::paper;
        else if (toks[2] == "reversed") doc.options.digit_order = DigitOrder::reversed;
        else diag(lineno, "digit_order: expected paper|reversed");
      } else {
        diag(lineno, "unknown option '" + toks[1] + "'");
      }
    } else {
      diag(lineno, "unknown directive '" + key + "'");
    }
  }

  if (!characteristic) diag(0, "missing required field: characteristic");
  else if (*characteristic < 3 || !is_prime(*characteristic))
    diag(0, "characteristic must be an odd prime >= 3");
  if (!group) diag(0, "missing required field: group");
  if (!genus_base) diag(0, "missing required field: genus_base");
  if (!doc.diagnostics.empty()) return doc;

  CoverSpec spec;
  spec.p = PrimeChar{*characteristic};
  spec.group = *group;
  spec.genus_base = *genus_base;
  spec.p_rank_base = p_rank_base;
  for (auto& [ln, b] : branch_raw) {
    b.filt.p = spec.p.p;
    b.filt.shape = spec.group.kind == GroupKind::cyclic ? FiltrationShape::cyclic
                                                        : FiltrationShape::weak;
    spec.branch.push_back(std::move(b));
  }

  auto v = validate_cover(spec, doc.options.strict_schmid);
  bool bad = false;
  for (const auto& issue : v.issues)
    if (issue.hard) {
      // attribute branch-point issues back to their lines where possible
      int at = 0;
      for (const auto& [ln, b] : branch_raw)
        if (issue.message.find("'" + b.label + "'") != std::string::npos) at = ln;
      diag(at, issue.message + " [" + issue.code + "]");
      bad = true;
    }
  if (!bad) doc.spec = std::move(spec);
  return doc;
}

inline ParsedDocument parse_document_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ParsedDocument doc;
    doc.diagnostics.push_back({0, "cannot open '" + path + "'"});
    return doc;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

// Round-trip: render a spec back into document form (used by the fuzzer to
// print minimized failing cases).
inline std::string render_document(const CoverSpec& s, const DocumentOptions& o) {
  std::ostringstream out;
  out << "characteristic " << s.p.p << "\n";
  out << "group " << group_kind_name(s.group.kind) << " " << s.group.e << "\n";
  out << "genus_base " << s.genus_base << "\n";
  if (s.p_rank_base) out << "p_rank_base " << *s.p_rank_base << "\n";
  for (const auto& b : s.branch) {
    out << "branch " << b.label << " " << b.filt.k << " ";
    for (std::size_t i = 0; i < b.filt.jumps.size(); ++i)
      out << (i ? "," : "") << b.filt.jumps[i];
    out << "\n";
  }
  if (o.strict_schmid) out << "option strict_schmid on\n";
  if (o.digit_order == DigitOrder::reversed) out << "option digit_order reversed\n";
  return out.str();
}

}  // namespace curvedef
