// Move-catalog document: parsing, validation, and canonical serialization.
// The matchers that bind rules to diagram sites live in rules_match.cpp.

#include "zq/rules.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace zq {

namespace {

[[noreturn]] void fail_at(int line, const std::string& msg) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string join(const std::vector<std::string>& toks) {
  std::string out;
  for (size_t i = 0; i < toks.size(); ++i) {
    if (i) out += ' ';
    out += toks[i];
  }
  return out;
}

// Which parameter keys a family requires; every other parameter key is
// rejected, so a block cannot smuggle in settings its matcher ignores.
struct FamilySpec {
  RuleFamily family;
  bool epsilon, threads, kinds, wedge, mover, sign;
  const char* framing_law;
};

const std::map<std::string, FamilySpec>& family_table() {
  static const std::map<std::string, FamilySpec> t = {
      {"reidemeister1", {RuleFamily::Reidemeister1, 0, 0, 0, 0, 0, 0, "none"}},
      {"reidemeister2", {RuleFamily::Reidemeister2, 0, 0, 0, 0, 0, 0, "none"}},
      {"reidemeister3", {RuleFamily::Reidemeister3, 0, 0, 0, 0, 0, 0, "none"}},
      {"blowdown", {RuleFamily::Blowdown, 1, 1, 1, 0, 0, 0, "blowdown"}},
      {"pair", {RuleFamily::Pair, 0, 1, 0, 1, 0, 0, "none"}},
      {"pair_extend", {RuleFamily::PairExtend, 0, 0, 0, 0, 0, 1, "none"}},
      {"slide", {RuleFamily::Slide, 1, 0, 0, 1, 1, 0, "none"}},
      {"rational_twist",
       {RuleFamily::RationalTwist, 0, 0, 0, 0, 0, 0, "rational-twist"}},
      {"infinity", {RuleFamily::Infinity, 0, 0, 0, 0, 0, 0, "none"}},
  };
  return t;
}

const char* family_name(RuleFamily f) {
  for (const auto& [name, spec] : family_table())
    if (spec.family == f) return name.c_str();
  return "?";
}

bool is_frame_token(const std::string& t) {
  return t == "eps" || t == "minus-eps" || t == "minus-dir" || t == "+1" ||
         t == "-1" || t == "inf" || t == "p/q" || t == "p/(q+dir*p)";
}

bool is_slot_name(const std::string& t) {
  return !t.empty() && t.back() == '*';
}

// Validates one pattern side and counts how often each declared leg and
// each internal junction name appears.  Returns the side re-serialized in
// canonical spacing.
std::string check_side(int line, const std::string& text,
                       const std::map<std::string, bool>& legs,
                       std::map<std::string, int>& uses,
                       std::map<std::string, int>& internals) {
  std::vector<std::string> items;
  {
    std::vector<std::string> toks = split_ws(text);
    std::vector<std::string> item;
    for (const std::string& t : toks) {
      if (t == ";") {
        if (item.empty()) fail_at(line, "empty pattern item");
        items.push_back(join(item));
        item.clear();
      } else {
        item.push_back(t);
      }
    }
    if (item.empty()) fail_at(line, "empty pattern side");
    items.push_back(join(item));
  }

  auto note_name = [&](const std::string& raw) {
    std::string name = raw;
    if (name.size() > 7 && name.rfind("wedge(", 0) == 0 &&
        name.back() == ')') {
      name = name.substr(6, name.size() - 7);
      if (!legs.count(name) || !is_slot_name(name))
        fail_at(line, "wedge(...) filter needs a declared thread slot, got '" +
                          name + "'");
    }
    if (is_frame_token(name))
      fail_at(line, "frame token '" + name + "' used where a name is needed");
    auto it = legs.find(name);
    if (it != legs.end()) {
      ++uses[name];
      return;
    }
    if (is_slot_name(name))
      fail_at(line, "unknown thread slot '" + name + "'");
    ++internals[name];
  };

  for (const std::string& item : items) {
    std::vector<std::string> t = split_ws(item);
    const std::string& kw = t[0];
    size_t n = t.size();
    if (kw == "strand" || kw == "loop") {
      if (n != 3) fail_at(line, "'" + kw + "' takes two strand ends");
      note_name(t[1]);
      note_name(t[2]);
    } else if (kw == "pass") {
      if (n < 2) fail_at(line, "'pass' needs at least one thread");
      for (size_t i = 1; i < n; ++i) note_name(t[i]);
    } else if (kw == "cross") {
      if (n != 5)
        fail_at(line, "'cross' takes over-in over-out under-in under-out");
      for (size_t i = 1; i < n; ++i) note_name(t[i]);
    } else if (kw == "poke") {
      if (n != 4 || (t[3] != "over" && t[3] != "under"))
        fail_at(line, "'poke' takes two strand ends and over|under");
      note_name(t[1]);
      note_name(t[2]);
    } else if (kw == "circle") {
      if (n < 2 || !is_frame_token(t[1]))
        fail_at(line, "'circle' needs a frame token");
      if (n > 2) {
        if (t[2] != "around" || n < 4)
          fail_at(line, "'circle' threads need 'around <names...>'");
        for (size_t i = 3; i < n; ++i) note_name(t[i]);
      }
    } else if (kw == "ring") {
      if (n < 3 || !is_frame_token(t[1]))
        fail_at(line, "'ring' needs a frame token and a position");
      if (t[2] == "around-neck") {
        if (n != 3) fail_at(line, "'around-neck' takes no names");
      } else if (t[2] == "around") {
        if (n < 4) fail_at(line, "'ring ... around' needs names");
        for (size_t i = 3; i < n; ++i) note_name(t[i]);
      } else {
        fail_at(line, "'ring' position must be 'around' or 'around-neck'");
      }
    } else if (kw == "pair") {
      if (n < 3 || t[1] != "around")
        fail_at(line, "'pair' needs 'around <names...>'");
      for (size_t i = 2; i < n; ++i) note_name(t[i]);
    } else if (kw == "twist") {
      if (n < 3 || !is_frame_token(t[1]))
        fail_at(line, "'twist' needs a frame token and threads");
      for (size_t i = 2; i < n; ++i) note_name(t[i]);
    } else if (kw == "nothing") {
      if (n != 1 || items.size() != 1)
        fail_at(line, "'nothing' must be the whole side");
    } else {
      fail_at(line, "unknown pattern vocabulary '" + kw + "'");
    }
  }

  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += " ; ";
    out += items[i];
  }
  return out;
}

struct PendingKey {
  std::string value;
  int line = 0;
  bool present = false;
};

}  // namespace

const RewriteRule* RuleSet::find(const std::string& id) const {
  auto it = index.find(id);
  return it == index.end() ? nullptr : &rules[it->second];
}

RuleSet load_rules(const std::string& text) {
  RuleSet rs;
  std::vector<std::string> lines;
  {
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur)) lines.push_back(cur);
  }

  size_t i = 0;
  bool saw_header = false;
  // Preamble: comments and blank lines before the version header are kept
  // verbatim so canonical documents round-trip byte for byte.
  for (; i < lines.size(); ++i) {
    std::string t = trim(lines[i]);
    if (t.empty() || t[0] == '#') {
      rs.preamble.push_back(lines[i]);
      continue;
    }
    if (t == "zq-rules 1") {
      saw_header = true;
      ++i;
      break;
    }
    fail_at((int)i + 1, "expected header 'zq-rules 1', got '" + t + "'");
  }
  if (!saw_header) fail_at((int)lines.size(), "missing 'zq-rules 1' header");

  while (i < lines.size()) {
    std::string t = trim(lines[i]);
    if (t.empty() || t[0] == '#') {
      ++i;
      continue;
    }
    std::vector<std::string> head = split_ws(t);
    int rule_line = (int)i + 1;
    if (head.size() != 2 || head[0] != "rule")
      fail_at(rule_line, "expected 'rule <id>', got '" + t + "'");
    const std::string id = head[1];
    if (rs.index.count(id)) fail_at(rule_line, "duplicate rule '" + id + "'");
    ++i;

    std::map<std::string, PendingKey> keys;
    bool closed = false;
    for (; i < lines.size(); ++i) {
      std::string body = trim(lines[i]);
      if (body.empty() || body[0] == '#') continue;
      if (body == "end") {
        closed = true;
        ++i;
        break;
      }
      size_t sp = body.find(' ');
      std::string key = sp == std::string::npos ? body : body.substr(0, sp);
      std::string val = sp == std::string::npos ? "" : trim(body.substr(sp));
      static const std::set<std::string> known = {
          "family", "epsilon", "threads", "kinds",  "wedge",
          "mover",  "sign",    "summary", "forward", "legs",
          "lhs",    "rhs",     "framing"};
      if (!known.count(key))
        fail_at((int)i + 1, "unknown key '" + key + "' in rule '" + id + "'");
      if (keys[key].present)
        fail_at((int)i + 1, "duplicate key '" + key + "' in rule '" + id + "'");
      keys[key] = {val, (int)i + 1, true};
    }
    if (!closed) fail_at((int)lines.size(), "rule '" + id + "' missing 'end'");

    auto need = [&](const char* k) -> PendingKey& {
      PendingKey& p = keys[k];
      if (!p.present)
        fail_at(rule_line, "rule '" + id + "' is missing '" + std::string(k) + "'");
      return p;
    };
    auto forbid = [&](const char* k) {
      if (keys[k].present)
        fail_at(keys[k].line,
                "rule '" + id + "' may not set '" + std::string(k) + "'");
    };

    RewriteRule r;
    r.id = id;
    PendingKey& fam = need("family");
    auto fit = family_table().find(fam.value);
    if (fit == family_table().end())
      fail_at(fam.line, "unknown family '" + fam.value + "'");
    const FamilySpec& spec = fit->second;
    r.family = spec.family;

    if (spec.epsilon) {
      PendingKey& e = need("epsilon");
      if (e.value == "-1") {
        r.epsilon = -1;
      } else if (e.value == "+1") {
        r.epsilon = +1;
      } else if (e.value == "any") {
        if (r.family == RuleFamily::Slide)
          fail_at(e.line, "slide rules need a definite epsilon");
        r.epsilon = 0;
      } else {
        fail_at(e.line, "epsilon must be -1, +1, or any");
      }
    } else {
      forbid("epsilon");
    }

    if (spec.threads) {
      PendingKey& th = need("threads");
      if (th.value == "none") r.threads = ThreadSpec::None;
      else if (th.value == "one") r.threads = ThreadSpec::One;
      else if (th.value == "two") r.threads = ThreadSpec::Two;
      else if (th.value == "many") r.threads = ThreadSpec::Many;
      else fail_at(th.line, "threads must be none, one, two, or many");
    } else {
      forbid("threads");
    }

    if (spec.kinds) {
      PendingKey& k = need("kinds");
      if (k.value == "any") r.link_only = false;
      else if (k.value == "link-only") r.link_only = true;
      else fail_at(k.line, "kinds must be any or link-only");
    } else {
      forbid("kinds");
    }

    if (spec.wedge) {
      PendingKey& w = need("wedge");
      if (w.value == "any") {
      } else if (w.value == "required") {
        r.wedge_required = true;
      } else if (w.value == "forbidden") {
        r.wedge_forbidden = true;
      } else {
        fail_at(w.line, "wedge must be any, required, or forbidden");
      }
    } else {
      forbid("wedge");
    }

    if (spec.mover) {
      PendingKey& m = need("mover");
      if (m.value == "over") r.mover_over = true;
      else if (m.value == "under") r.mover_over = false;
      else fail_at(m.line, "mover must be over or under");
    } else {
      forbid("mover");
    }

    if (spec.sign) {
      PendingKey& s = need("sign");
      if (s.value == "+1") r.pair_sign = +1;
      else if (s.value == "-1") r.pair_sign = -1;
      else fail_at(s.line, "sign must be +1 or -1");
    } else {
      forbid("sign");
    }

    r.summary = need("summary").value;
    r.forward_note = need("forward").value;
    if (r.summary.empty()) fail_at(keys["summary"].line, "empty summary");
    if (r.forward_note.empty()) fail_at(keys["forward"].line, "empty forward");

    PendingKey& fr = need("framing");
    if (fr.value != spec.framing_law)
      fail_at(fr.line, "family '" + fam.value + "' uses 'framing " +
                           spec.framing_law + "'");
    r.framing_law = fr.value;

    PendingKey& lg = need("legs");
    r.legs = split_ws(lg.value);
    std::map<std::string, bool> legset;
    for (const std::string& l : r.legs) {
      if (is_frame_token(l)) fail_at(lg.line, "leg '" + l + "' is a frame token");
      if (legset.count(l)) fail_at(lg.line, "duplicate leg '" + l + "'");
      legset[l] = is_slot_name(l);
    }

    PendingKey& lhs = need("lhs");
    PendingKey& rhs = need("rhs");
    std::map<std::string, int> luse, ruse, lint, rint;
    r.lhs = check_side(lhs.line, lhs.value, legset, luse, lint);
    r.rhs = check_side(rhs.line, rhs.value, legset, ruse, rint);

    // Boundary interface: every leg occurs on both sides, plain legs
    // exactly once per side.  Internal junction names must pair up within
    // their own side (one producer, one consumer).
    for (const std::string& l : r.legs) {
      int lc = luse.count(l) ? luse[l] : 0;
      int rc = ruse.count(l) ? ruse[l] : 0;
      bool ok = legset[l] ? (lc >= 1 && rc >= 1) : (lc == 1 && rc == 1);
      if (!ok)
        fail_at(rhs.line, "interface mismatch between lhs and rhs (leg '" +
                              l + "' used " + std::to_string(lc) + "/" +
                              std::to_string(rc) + " times)");
    }
    for (const auto& [n, c] : lint)
      if (c != 2)
        fail_at(lhs.line, "internal name '" + n + "' must appear exactly twice");
    for (const auto& [n, c] : rint)
      if (c != 2)
        fail_at(rhs.line, "internal name '" + n + "' must appear exactly twice");

    rs.index[id] = rs.rules.size();
    rs.rules.push_back(std::move(r));
  }
  return rs;
}

RuleSet load_rules_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open rules document: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_rules(buf.str());
}

std::string serialize_rules(const RuleSet& rs) {
  std::ostringstream out;
  for (const std::string& l : rs.preamble) out << l << "\n";
  out << "zq-rules 1\n";
  for (const RewriteRule& r : rs.rules) {
    out << "\nrule " << r.id << "\n";
    out << "  family " << family_name(r.family) << "\n";
    if (r.family == RuleFamily::Blowdown || r.family == RuleFamily::Slide) {
      out << "  epsilon "
          << (r.epsilon == 0 ? "any" : (r.epsilon > 0 ? "+1" : "-1")) << "\n";
    }
    if (r.family == RuleFamily::Blowdown || r.family == RuleFamily::Pair) {
      const char* th = r.threads == ThreadSpec::None   ? "none"
                       : r.threads == ThreadSpec::One  ? "one"
                       : r.threads == ThreadSpec::Two  ? "two"
                                                       : "many";
      out << "  threads " << th << "\n";
    }
    if (r.family == RuleFamily::Blowdown)
      out << "  kinds " << (r.link_only ? "link-only" : "any") << "\n";
    if (r.family == RuleFamily::Pair || r.family == RuleFamily::Slide) {
      const char* w = r.wedge_required ? "required"
                      : r.wedge_forbidden ? "forbidden"
                                          : "any";
      out << "  wedge " << w << "\n";
    }
    if (r.family == RuleFamily::Slide)
      out << "  mover " << (r.mover_over ? "over" : "under") << "\n";
    if (r.family == RuleFamily::PairExtend)
      out << "  sign " << (r.pair_sign > 0 ? "+1" : "-1") << "\n";
    out << "  summary " << r.summary << "\n";
    out << "  forward " << r.forward_note << "\n";
    out << "  legs";
    for (const std::string& l : r.legs) out << " " << l;
    out << "\n";
    out << "  lhs " << r.lhs << "\n";
    out << "  rhs " << r.rhs << "\n";
    out << "  framing " << r.framing_law << "\n";
    out << "end\n";
  }
  return out.str();
}

// The compiled-in catalog.  rules/moves.rules in the source tree must stay
// byte-identical to this string; a test compares them.
const std::string& canonical_rules_text() {
  static const std::string text = R"rules(# Move catalog for diagrams of circle wedges and framed links.
#
# Each block declares one rewrite as data: a structural family naming the
# matcher, parameters fixing chirality and thread admissibility, and the
# boundary patterns of both sides.  Legs are the strand ends (or whole
# through-threads, for names ending in *) that the two sides share; the
# loader refuses a document whose sides disagree on that interface.
# Pattern vocabulary: strand/loop/pass for arcs, cross for a crossing with
# over pair then under pair, circle/ring/pair/twist for closed features,
# nothing for an empty side.  Frame tokens eps, minus-eps, dir and
# minus-dir refer back to the epsilon/sign parameters of the block.
zq-rules 1

rule R1m
  family reidemeister1
  summary cancel a curl: one self-crossing whose loop bounds a monogon
  forward removes the curl
  legs a0 a1
  lhs cross x1 a1 a0 x0 ; loop x0 x1
  rhs strand a0 a1
  framing none
end

rule R2m
  family reidemeister2
  summary cancel a bigon: one strand crosses straight over another and back
  forward removes the bigon
  legs a0 a1 b0 b1
  lhs cross b0 xb a0 xa ; cross xb b1 xa a1
  rhs strand a0 a1 ; strand b0 b1
  framing none
end

rule R3m
  family reidemeister3
  summary slide a strand across the crossing on the far side of a triangle
  forward slides the bottom strand to the other side
  legs t0 t1 m0 m1 s0 s1
  lhs cross t0 tx m0 mx ; cross tx t1 s0 sx ; cross mx m1 sx s1
  rhs cross mx m1 s0 sx ; cross tx t1 sx s1 ; cross t0 tx m0 mx
  framing none
end

rule Neg1
  family blowdown
  epsilon -1
  threads many
  kinds any
  summary blow down a -1-framed circle, full-twisting the threads it rings
  forward deletes the circle
  legs t*
  lhs circle eps around t*
  rhs twist minus-eps t* ; ring eps around wedge(t*)
  framing blowdown
end

rule Zero
  family pair
  threads many
  wedge any
  summary insert or delete a cancelling +1/-1 circle pair around the same threads
  forward deletes the pair
  legs t*
  lhs pair around t*
  rhs pass t*
  framing none
end

rule Pos1
  family blowdown
  epsilon +1
  threads many
  kinds any
  summary blow down a +1-framed circle, full-twisting the threads it rings
  forward deletes the circle
  legs t*
  lhs circle eps around t*
  rhs twist minus-eps t* ; ring eps around wedge(t*)
  framing blowdown
end

rule M1
  family slide
  epsilon -1
  wedge forbidden
  mover over
  summary slide a link strand across an adjacent -1-framed circle, passing over it
  forward pushes the strand across
  legs s0 s1 r*
  lhs circle eps around r* ; strand s0 s1
  rhs circle eps around r* ; poke s0 s1 over
  framing none
end

rule M2
  family slide
  epsilon +1
  wedge forbidden
  mover under
  summary slide a link strand across an adjacent +1-framed circle, passing under it
  forward pushes the strand across
  legs s0 s1 r*
  lhs circle eps around r* ; strand s0 s1
  rhs circle eps around r* ; poke s0 s1 under
  framing none
end

rule M3
  family blowdown
  epsilon any
  threads none
  kinds any
  summary delete an isolated +1- or -1-framed unknotted circle
  forward deletes the circle
  legs
  lhs circle eps
  rhs nothing
  framing blowdown
end

rule M4
  family blowdown
  epsilon any
  threads one
  kinds link-only
  summary blow down a +-1-framed circle ringing one link thread
  forward deletes the circle
  legs t1
  lhs circle eps around t1
  rhs twist minus-eps t1
  framing blowdown
end

rule M5
  family blowdown
  epsilon any
  threads two
  kinds link-only
  summary blow down a +-1-framed circle ringing two link threads
  forward deletes the circle
  legs t1 t2
  lhs circle eps around t1 t2
  rhs twist minus-eps t1 t2
  framing blowdown
end

rule W1
  family slide
  epsilon -1
  wedge required
  mover over
  summary slide a strand across a -1-framed circle that rings a wedge thread
  forward pushes the strand across
  legs s0 s1 r*
  lhs circle eps around r* ; strand s0 s1
  rhs circle eps around r* ; poke s0 s1 over
  framing none
end

rule W2
  family slide
  epsilon +1
  wedge required
  mover under
  summary slide a strand across a +1-framed circle that rings a wedge thread
  forward pushes the strand across
  legs s0 s1 r*
  lhs circle eps around r* ; strand s0 s1
  rhs circle eps around r* ; poke s0 s1 under
  framing none
end

rule W3
  family pair
  threads one
  wedge required
  summary insert or delete a cancelling pair around one wedge thread
  forward deletes the pair
  legs t1
  lhs pair around t1
  rhs pass t1
  framing none
end

rule W4
  family pair
  threads two
  wedge required
  summary insert or delete a cancelling pair around two threads, one a wedge thread
  forward deletes the pair
  legs t1 t2
  lhs pair around t1 t2
  rhs pass t1 t2
  framing none
end

rule W5
  family pair_extend
  sign +1
  summary move a cancelling pair across its neighboring thread, positive passages
  forward peels the end thread back out of the pair
  legs t* s
  lhs pair around t* s
  rhs pair around t* ; pass s
  framing none
end

rule W6
  family pair_extend
  sign -1
  summary move a cancelling pair across its neighboring thread, negative passages
  forward peels the end thread back out of the pair
  legs t* s
  lhs pair around t* s
  rhs pair around t* ; pass s
  framing none
end

rule Rat2
  family rational_twist
  summary twist a bare rational circle, leaving a -dir companion ring on its neck
  forward reframes p/q to p/(q+dir*p) and adds the companion
  legs
  lhs circle p/q
  rhs circle p/(q+dir*p) ; ring minus-dir around-neck
  framing rational-twist
end

rule RatInf
  family infinity
  summary insert or delete a circle framed +-infinity (its surgery is trivial)
  forward deletes the circle
  legs
  lhs circle inf
  rhs nothing
  framing none
end
)rules";
  return text;
}

RuleSet canonical_rules() { return load_rules(canonical_rules_text()); }

}  // namespace zq
