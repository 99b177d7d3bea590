#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "simplexcert/expansion.hpp"
#include "simplexcert/form.hpp"
#include "simplexcert/simplex.hpp"

namespace simplexcert {

enum class Goal { ProveStrictPositive, ProveNonnegative, Decide };
enum class Traversal { BreadthFirst, DepthFirst };
enum class Verdict { Positive, Nonnegative, NegativeWitness, Undecided };

const char* to_string(Goal g);
const char* to_string(Traversal t);
const char* to_string(Verdict v);
Goal goal_from_string(const std::string& s);
Traversal traversal_from_string(const std::string& s);
Verdict verdict_from_string(const std::string& s);

struct SdsConfig {
    int max_depth = 6;                             // longest allowed word
    Goal goal = Goal::ProveStrictPositive;
    Traversal traversal = Traversal::BreadthFirst;
    std::size_t node_cap = 200000;                 // frontier/visit budget
    int workers = 1;                               // breadth-first only
    bool stop_on_zero = false;                     // halt at first exact zero probe
};

struct Leaf {
    PermutationWord word;
    SignClass cls;
};

struct NegativeWitness {
    PermutationWord word;   // cell whose probe went negative
    RationalPoint point;    // vertex or center of that cell
    Rational value;         // exact f(point), < 0
};

struct ZeroRecord {
    PermutationWord word;
    RationalPoint point;    // exact zero of f met during probing
};

/// Replayable outcome of a subdivision search. Leaves are stored only for
/// Positive/Nonnegative verdicts, sorted by word; zeros are the distinct
/// exact zeros met while probing (capped), never a disproof by themselves.
struct Certificate {
    Verdict verdict = Verdict::Undecided;
    Goal goal = Goal::ProveStrictPositive;
    int depth_used = 0;
    std::vector<Leaf> leaves;
    std::optional<NegativeWitness> witness;
    std::vector<ZeroRecord> zeros;
    std::string note;

    std::string to_text() const;
    static Certificate from_text(const std::string& text);  // throws ParseError
};

/// Searches the tree of barycentric-matrix words under f, certifying cells
/// whose expanded coefficients meet the goal and probing cell vertices and
/// centers for negative values (and exact zeros). Depth-first traversal is
/// sequential; breadth-first honors config.workers with byte-identical
/// output for any worker count.
Certificate sds_search(const Form& f, const SdsConfig& config);

/// Re-derives every stored leaf class, re-evaluates the witness and the zero
/// records, and checks frontier completeness for Positive/Nonnegative
/// verdicts. Returns false on any mismatch; structurally malformed
/// certificates (wrong dimensions, bad words) throw std::invalid_argument.
/// When `reason` is non-null it receives a diagnostic for the first failure.
bool replay_certificate(const Form& f, const Certificate& cert,
                        std::string* reason = nullptr);

}  // namespace simplexcert
