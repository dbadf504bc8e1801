#pragma once

// The move catalog as data.  Every rewrite the engine can perform is
// declared in a versioned, line-oriented rules document: a structural
// family naming the matcher, parameters fixing chirality and thread
// admissibility, and left/right boundary patterns over named legs.  The
// loader rejects documents whose two sides disagree about the boundary
// interface, so a mistranscribed pattern surfaces at load time or in the
// replay/invariance suites, never as silently different behavior.
//
// Matching is anchored: a MoveSite names concrete darts/components for
// the handful of pattern anchors each family needs, and verify_site
// re-derives every structural precondition from the diagram, so a stale
// or hand-forged site is rejected rather than trusted.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "zq/diagram.hpp"
#include "zq/macros.hpp"

namespace zq {

enum class RuleFamily {
  Reidemeister1,
  Reidemeister2,
  Reidemeister3,
  Blowdown,
  Pair,
  PairExtend,
  Slide,
  RationalTwist,
  Infinity,
};

// Thread-multiplicity slot of a parameterized rule.
enum class ThreadSpec { None, One, Two, Many };

struct RewriteRule {
  std::string id;
  RuleFamily family = RuleFamily::Reidemeister1;
  int epsilon = 0;        // blowdown/slide: +1, -1, or 0 meaning either
  ThreadSpec threads = ThreadSpec::Many;
  bool link_only = false;       // blowdown: threads must be link strands
  bool wedge_required = false;  // pair/slide: a wedge thread must be present
  bool wedge_forbidden = false;
  bool mover_over = false;  // slide: the sliding strand passes over the circle
  int pair_sign = 0;        // pair_extend: sign of the absorbed passages
  std::string summary;
  std::string forward_note;  // which side of the relation "forward" names
  std::string framing_law;   // none | blowdown | rational-twist
  std::vector<std::string> legs;
  std::string lhs, rhs;
};

struct RuleSet {
  std::vector<RewriteRule> rules;          // document order
  std::map<std::string, size_t> index;     // id -> position in rules
  std::vector<std::string> preamble;       // leading comment block, kept
                                           // for byte-exact serialization
  const RewriteRule* find(const std::string& id) const;
};

// Parses and validates a rules document.  Throws std::runtime_error with
// "line N: ..." messages for malformed patterns, unknown vocabulary, and
// boundary-interface mismatches between lhs and rhs.
RuleSet load_rules(const std::string& text);
RuleSet load_rules_file(const std::string& path);

// The canonical catalog compiled into the library (the shipped
// rules/moves.rules must match it byte for byte; a test enforces the sync).
const std::string& canonical_rules_text();
RuleSet canonical_rules();

// Canonical-form serialization; parse(serialize(rs)) == rs and
// serialize(parse(text)) == text on canonical documents.
std::string serialize_rules(const RuleSet& rs);

// One concrete application site: a rule, a direction, and a binding of the
// family's anchors to diagram darts/components/signs.  `lanes` carries the
// ordered thread slots of parameterized rules.  `aux` and `note` are
// engine-owned witness payloads emitted by apply() so the inverse can undo
// an application exactly; matchers leave them empty.
struct MoveSite {
  std::string rule;
  bool inverse = false;
  std::map<std::string, std::int64_t> bind;
  std::vector<DartId> lanes;
  std::vector<std::int64_t> aux;
  std::string note;
};

struct MatchBounds {
  int max_threads = 4;    // cap for *-slots (blowdown bundles, pairs)
  bool forward = true;    // enumerate forward sites
  bool inverse = true;    // enumerate inverse sites
  std::size_t max_sites = 100000;
};

// Complete anchored enumeration of sites for one rule, both directions
// unless the bounds say otherwise.  Every returned site passes verify_site.
std::vector<MoveSite> match_sites(const Diagram& d, const RuleSet& rs,
                                  const std::string& rule_id,
                                  const MatchBounds& bounds = {});

struct SiteCheck {
  bool ok = false;
  std::string why;
};

// Re-derives the structural preconditions of the site's rule and direction
// directly from the diagram.  Diagnoses failures instead of throwing.
SiteCheck verify_site(const Diagram& d, const RuleSet& rs, const MoveSite& s);

// --- shared site geometry (used by verify_site and the engine) -----------

// The canonical cancelling pair: circles framed +1 and -1, both simple,
// ringing the same threads in the same corridor order, directly adjacent
// (each thread runs from one circle's crossing straight into the other's).
// Passages are reported in the +1 circle's corridor order.
struct PairShape {
  bool ok = false;
  std::string why;
  CompId plus = kNoComp;
  CompId minus = kNoComp;
  int thread_count = 0;
  bool has_wedge = false;
  std::vector<CompId> thread_comps;  // per corridor slot of the +1 circle
  std::vector<int> thread_signs;     // per corridor slot, sign through +1
  std::vector<int> minus_slot;       // +1-circle slot -> -1-circle slot
  // Thread-free pairs are recognized as one bare circle hosted directly
  // inside the other; these record which played which role.
  CompId outer = kNoComp;
  CompId inner = kNoComp;
};
PairShape read_pair(const Diagram& d, CompId plus, CompId minus);

// Outer-side dart of a simple circle's cap arc at the given corridor end:
// the circle edge joining the end passage's two crossings to each other
// directly (end 0 sits before the first corridor slot, end 1 after the
// last).  kNoDart when the portrait has no passages.
DartId circle_cap_dart(const Diagram& d, const CirclePortrait& pt, int end);

}  // namespace zq
