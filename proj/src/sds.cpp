#include "simplexcert/sds.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

namespace simplexcert {

const char* to_string(Goal g) {
    switch (g) {
        case Goal::ProveStrictPositive: return "ProveStrictPositive";
        case Goal::ProveNonnegative: return "ProveNonnegative";
        case Goal::Decide: return "Decide";
    }
    throw std::logic_error("unreachable");
}

const char* to_string(Traversal t) {
    switch (t) {
        case Traversal::BreadthFirst: return "breadth-first";
        case Traversal::DepthFirst: return "depth-first";
    }
    throw std::logic_error("unreachable");
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Positive: return "Positive";
        case Verdict::Nonnegative: return "Nonnegative";
        case Verdict::NegativeWitness: return "NegativeWitness";
        case Verdict::Undecided: return "Undecided";
    }
    throw std::logic_error("unreachable");
}

Goal goal_from_string(const std::string& s) {
    for (Goal g : {Goal::ProveStrictPositive, Goal::ProveNonnegative, Goal::Decide})
        if (s == to_string(g)) return g;
    throw std::invalid_argument("unknown goal: '" + s + "'");
}

Traversal traversal_from_string(const std::string& s) {
    for (Traversal t : {Traversal::BreadthFirst, Traversal::DepthFirst})
        if (s == to_string(t)) return t;
    throw std::invalid_argument("unknown traversal: '" + s + "'");
}

Verdict verdict_from_string(const std::string& s) {
    for (Verdict v : {Verdict::Positive, Verdict::Nonnegative,
                      Verdict::NegativeWitness, Verdict::Undecided})
        if (s == to_string(v)) return v;
    throw std::invalid_argument("unknown verdict: '" + s + "'");
}

// ---------------------------------------------------------------------------
// Certificate text form
// ---------------------------------------------------------------------------

std::string Certificate::to_text() const {
    std::ostringstream out;
    out << "certificate verdict=" << to_string(verdict) << " goal=" << to_string(goal)
        << " depth-used=" << depth_used << "\n";
    for (const Leaf& leaf : leaves)
        out << "leaf word=" << serialize_word(leaf.word)
            << " class=" << to_string(leaf.cls) << "\n";
    if (witness) {
        out << "witness word=" << serialize_word(witness->word) << "\n";
        out << "witness point=" << serialize_point(witness->point) << "\n";
        out << "witness value=" << to_string(witness->value) << "\n";
    }
    for (const ZeroRecord& z : zeros)
        out << "zero word=" << serialize_word(z.word)
            << " point=" << serialize_point(z.point) << "\n";
    if (!note.empty()) out << "note=" << note << "\n";
    return out.str();
}

namespace {

// Parses a word without knowing n up front: the first permutation's entry
// count fixes it. "e" is the empty word.
PermutationWord parse_word_flex(const std::string& text) {
    if (text == "e") return {};
    std::istringstream first_perm(text.substr(0, text.find(',')));
    int n = 0;
    for (std::string tok; first_perm >> tok;) ++n;
    return parse_word(text, n);
}

int parse_int_field(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad ") + what + ": '" + text + "'");
    }
}

bool starts_with(const std::string& line, const char* prefix) {
    return line.rfind(prefix, 0) == 0;
}

}  // namespace

Certificate Certificate::from_text(const std::string& text) {
    Certificate cert;
    bool saw_header = false, saw_verdict = false, saw_goal = false, saw_depth = false;
    std::optional<PermutationWord> wit_word;
    std::optional<RationalPoint> wit_point;
    std::optional<Rational> wit_value;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        try {
            if (starts_with(line, "certificate ") || line == "certificate") {
                saw_header = true;
                std::istringstream fields(line.substr(11));
                for (std::string tok; fields >> tok;) {
                    auto eq = tok.find('=');
                    if (eq == std::string::npos)
                        throw std::invalid_argument("bad header field: '" + tok + "'");
                    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
                    if (key == "verdict") {
                        cert.verdict = verdict_from_string(val);
                        saw_verdict = true;
                    } else if (key == "goal") {
                        cert.goal = goal_from_string(val);
                        saw_goal = true;
                    } else if (key == "depth-used") {
                        cert.depth_used = parse_int_field(val, "depth-used");
                        saw_depth = true;
                    } else {
                        throw std::invalid_argument("unknown header field: '" + key + "'");
                    }
                }
            } else if (starts_with(line, "leaf word=")) {
                auto cls_at = line.rfind(" class=");
                if (cls_at == std::string::npos)
                    throw std::invalid_argument("leaf line missing class");
                Leaf leaf;
                leaf.word = parse_word_flex(line.substr(10, cls_at - 10));
                leaf.cls = sign_class_from_string(line.substr(cls_at + 7));
                cert.leaves.push_back(std::move(leaf));
            } else if (starts_with(line, "witness word=")) {
                wit_word = parse_word_flex(line.substr(13));
            } else if (starts_with(line, "witness point=")) {
                wit_point = parse_point(line.substr(14));
            } else if (starts_with(line, "witness value=")) {
                wit_value = parse_rational(line.substr(14));
            } else if (starts_with(line, "zero word=")) {
                auto pt_at = line.rfind(" point=");
                if (pt_at == std::string::npos)
                    throw std::invalid_argument("zero line missing point");
                ZeroRecord z;
                z.word = parse_word_flex(line.substr(10, pt_at - 10));
                z.point = parse_point(line.substr(pt_at + 7));
                cert.zeros.push_back(std::move(z));
            } else if (starts_with(line, "note=")) {
                cert.note = line.substr(5);
            } else {
                throw std::invalid_argument("unrecognized certificate line");
            }
        } catch (const std::invalid_argument& e) {
            throw ParseError(lineno, e.what());
        }
    }
    if (!saw_header) throw ParseError(lineno > 0 ? lineno : 1, "missing certificate header");
    if (!saw_verdict || !saw_goal || !saw_depth)
        throw ParseError(1, "certificate header needs verdict, goal and depth-used");

    bool wit_any = wit_word || wit_point || wit_value;
    bool wit_all = wit_word && wit_point && wit_value;
    if (cert.verdict == Verdict::NegativeWitness) {
        if (!wit_all) throw ParseError(lineno > 0 ? lineno : 1, "incomplete witness block");
        cert.witness = NegativeWitness{std::move(*wit_word), std::move(*wit_point),
                                       std::move(*wit_value)};
    } else if (wit_any) {
        throw ParseError(lineno > 0 ? lineno : 1,
                         "witness block requires a NegativeWitness verdict");
    }
    return cert;
}

// ---------------------------------------------------------------------------
// Search
// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kZeroRecordCap = 64;

struct Node {
    PermutationWord word;
    SimplexMatrix matrix;
    Form expanded;
};

struct ProbeOutcome {
    std::optional<NegativeWitness> witness;
    std::vector<ZeroRecord> zeros;  // zeros met before the witness probe
};

// Evaluates the original form at the cell's vertices and center, in that
// fixed order; stops at the first strictly negative value.
ProbeOutcome probe_cell(const Form& f, const Node& node) {
    ProbeOutcome out;
    auto check = [&](RationalPoint point) {
        Rational value = f.evaluate(point);
        int s = sign(value);
        if (s < 0) {
            out.witness = NegativeWitness{node.word, std::move(point), std::move(value)};
            return true;
        }
        if (s == 0) out.zeros.push_back(ZeroRecord{node.word, std::move(point)});
        return false;
    };
    for (int j = 0; j < node.matrix.dim(); ++j)
        if (check(node.matrix.vertex(j))) return out;
    check(node.matrix.center());
    return out;
}

bool class_meets_goal(SignClass cls, Goal goal) {
    if (cls == SignClass::AllPositive) return true;
    return goal == Goal::ProveNonnegative && cls == SignClass::AllNonnegative;
}

struct NodeResult {
    SignClass cls = SignClass::Mixed;
    bool is_leaf = false;
    ProbeOutcome probes;
    std::vector<Node> children;
};

NodeResult process_node(const Form& f, const Node& node, bool expand_children,
                        const SdsConfig& cfg, const std::vector<Permutation>& perms,
                        const std::vector<SimplexMatrix>& generators) {
    NodeResult r;
    r.probes = probe_cell(f, node);
    // a witness (or a zero in stop-on-zero mode) ends the search, so the
    // subtree is never needed
    if (r.probes.witness) return r;
    if (cfg.stop_on_zero && !r.probes.zeros.empty()) return r;
    r.cls = sign_classify(node.expanded);
    if (r.cls == SignClass::ZeroForm)
        throw std::logic_error("expansion of a nonzero form vanished");
    r.is_leaf = class_meets_goal(r.cls, cfg.goal);
    if (r.is_leaf || !expand_children) return r;
    r.children.reserve(perms.size());
    for (std::size_t k = 0; k < perms.size(); ++k) {
        PermutationWord child_word = node.word;
        child_word.push_back(perms[k]);
        // functoriality: expanding the parent's expansion by one generator
        // equals expanding f by the full word
        r.children.push_back(Node{std::move(child_word),
                                  multiply(node.matrix, generators[k]),
                                  expand(node.expanded, generators[k])});
    }
    return r;
}

void record_zero(Certificate& cert, std::set<std::string>& seen, ZeroRecord z) {
    if (cert.zeros.size() >= kZeroRecordCap) return;
    if (seen.insert(serialize_point(z.point)).second) cert.zeros.push_back(std::move(z));
}

Certificate conclude_frontier(Certificate cert, std::vector<Leaf> leaves,
                              bool incomplete, int max_depth) {
    if (incomplete) {
        cert.verdict = Verdict::Undecided;
        cert.depth_used = max_depth;
        cert.note = "depth budget exhausted";
        return cert;
    }
    std::sort(leaves.begin(), leaves.end(),
              [](const Leaf& a, const Leaf& b) { return word_less(a.word, b.word); });
    bool all_positive = std::all_of(leaves.begin(), leaves.end(), [](const Leaf& l) {
        return l.cls == SignClass::AllPositive;
    });
    std::size_t deepest = 0;
    for (const Leaf& l : leaves) deepest = std::max(deepest, l.word.size());
    cert.verdict = all_positive ? Verdict::Positive : Verdict::Nonnegative;
    cert.depth_used = static_cast<int>(deepest);
    cert.leaves = std::move(leaves);
    return cert;
}

// Fills results[i] = process_node(frontier[i]) on `workers` threads. Indices
// past the lowest level-ending result may be skipped; everything at or below
// it is always computed, which is all the ordered reduction ever reads.
void fill_results_parallel(const Form& f, const std::vector<Node>& frontier,
                           std::vector<NodeResult>& results, bool expand_children,
                           const SdsConfig& cfg, const std::vector<Permutation>& perms,
                           const std::vector<SimplexMatrix>& generators, int workers) {
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> stop_at{frontier.size()};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    auto body = [&](std::size_t w) {
        try {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= frontier.size()) break;
                if (i > stop_at.load(std::memory_order_relaxed)) continue;
                results[i] = process_node(f, frontier[i], expand_children, cfg,
                                          perms, generators);
                if (results[i].probes.witness ||
                    (cfg.stop_on_zero && !results[i].probes.zeros.empty())) {
                    std::size_t cur = stop_at.load();
                    while (i < cur && !stop_at.compare_exchange_weak(cur, i)) {}
                }
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (std::size_t w = 0; w < static_cast<std::size_t>(workers); ++w)
        pool.emplace_back(body, w);
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
}

Certificate run_breadth_first(const Form& f, const SdsConfig& cfg,
                              const std::vector<Permutation>& perms,
                              const std::vector<SimplexMatrix>& generators) {
    Certificate cert;
    cert.goal = cfg.goal;
    std::vector<Leaf> leaves;
    std::set<std::string> zero_seen;
    bool incomplete = false;

    std::vector<Node> frontier;
    frontier.push_back(Node{{}, SimplexMatrix::identity(f.variable_count()), f});

    int depth = 0;
    while (!frontier.empty()) {
        bool expand_children = depth < cfg.max_depth;
        std::vector<NodeResult> results(frontier.size());
        std::vector<Node> next_frontier;

        // Ordered reduction: certificates depend only on node index order, so
        // output is byte-identical for any worker count.
        auto reduce_one = [&](std::size_t i) {
            NodeResult& r = results[i];
            bool had_zero = !r.probes.zeros.empty();
            for (ZeroRecord& z : r.probes.zeros)
                record_zero(cert, zero_seen, std::move(z));
            if (r.probes.witness) {
                cert.verdict = Verdict::NegativeWitness;
                cert.depth_used = static_cast<int>(frontier[i].word.size());
                cert.witness = std::move(r.probes.witness);
                return true;
            }
            if (cfg.stop_on_zero && had_zero) {
                cert.verdict = Verdict::Undecided;
                cert.depth_used = static_cast<int>(frontier[i].word.size());
                cert.note = "stopped at exact zero";
                return true;
            }
            if (r.is_leaf) {
                leaves.push_back(Leaf{std::move(frontier[i].word), r.cls});
            } else if (!expand_children) {
                incomplete = true;
            } else {
                for (Node& child : r.children) next_frontier.push_back(std::move(child));
            }
            return false;
        };

        int workers = cfg.workers < 1 ? 1 : cfg.workers;
        if (static_cast<std::size_t>(workers) > frontier.size())
            workers = static_cast<int>(frontier.size());
        if (workers <= 1) {
            for (std::size_t i = 0; i < frontier.size(); ++i) {
                results[i] = process_node(f, frontier[i], expand_children, cfg,
                                          perms, generators);
                if (reduce_one(i)) return cert;
            }
        } else {
            fill_results_parallel(f, frontier, results, expand_children, cfg,
                                  perms, generators, workers);
            for (std::size_t i = 0; i < frontier.size(); ++i)
                if (reduce_one(i)) return cert;
        }

        if (next_frontier.size() > cfg.node_cap) {
            cert.verdict = Verdict::Undecided;
            cert.depth_used = depth;
            cert.note = "node cap exceeded: depth " + std::to_string(depth + 1) +
                        " needs " + std::to_string(next_frontier.size()) + " nodes";
            return cert;
        }
        frontier = std::move(next_frontier);
        ++depth;
    }
    return conclude_frontier(std::move(cert), std::move(leaves), incomplete,
                             cfg.max_depth);
}

struct DepthFirstDriver {
    const Form& f;
    const SdsConfig& cfg;
    const std::vector<Permutation>& perms;
    const std::vector<SimplexMatrix>& generators;

    Certificate cert{};
    std::vector<Leaf> leaves{};
    std::set<std::string> zero_seen{};
    std::size_t visited = 0;
    bool incomplete = false;
    bool done = false;

    // Preorder walk; children in generator order, so leaves come out already
    // sorted by word.
    void visit(Node& node, int depth) {
        if (++visited > cfg.node_cap) {
            cert.verdict = Verdict::Undecided;
            cert.depth_used = depth;
            cert.note = "node cap exceeded: " + std::to_string(visited) + " nodes visited";
            done = true;
            return;
        }
        NodeResult r = process_node(f, node, depth < cfg.max_depth, cfg, perms,
                                    generators);
        bool had_zero = !r.probes.zeros.empty();
        for (ZeroRecord& z : r.probes.zeros) record_zero(cert, zero_seen, std::move(z));
        if (r.probes.witness) {
            cert.verdict = Verdict::NegativeWitness;
            cert.depth_used = depth;
            cert.witness = std::move(r.probes.witness);
            done = true;
            return;
        }
        if (cfg.stop_on_zero && had_zero) {
            cert.verdict = Verdict::Undecided;
            cert.depth_used = depth;
            cert.note = "stopped at exact zero";
            done = true;
            return;
        }
        if (r.is_leaf) {
            leaves.push_back(Leaf{std::move(node.word), r.cls});
            return;
        }
        if (depth == cfg.max_depth) {
            incomplete = true;
            return;
        }
        for (Node& child : r.children) {
            visit(child, depth + 1);
            if (done) return;
        }
    }
};

}  // namespace

Certificate sds_search(const Form& f, const SdsConfig& config) {
    if (f.is_zero()) throw std::invalid_argument("sds_search: zero form");
    if (config.max_depth < 0)
        throw std::invalid_argument("sds_search: max_depth must be nonnegative");

    std::vector<Permutation> perms = all_permutations(f.variable_count());
    std::vector<SimplexMatrix> generators;
    generators.reserve(perms.size());
    for (const Permutation& sigma : perms) generators.push_back(barycentric_matrix(sigma));

    if (config.traversal == Traversal::DepthFirst) {
        DepthFirstDriver driver{f, config, perms, generators};
        driver.cert.goal = config.goal;
        Node root{{}, SimplexMatrix::identity(f.variable_count()), f};
        driver.visit(root, 0);
        if (driver.done) return std::move(driver.cert);
        return conclude_frontier(std::move(driver.cert), std::move(driver.leaves),
                                 driver.incomplete, config.max_depth);
    }
    return run_breadth_first(f, config, perms, generators);
}

// ---------------------------------------------------------------------------
// Replay
// ---------------------------------------------------------------------------

namespace {

bool fail(std::string* reason, std::string message) {
    if (reason) *reason = std::move(message);
    return false;
}

void require_valid_word(const PermutationWord& word, int n) {
    for (const Permutation& sigma : word)
        if (static_cast<int>(sigma.size()) != n || !is_permutation(sigma))
            throw std::invalid_argument("certificate word does not match the form's arity");
}

// Checks that the sorted word list [lo, hi) forms a complete prefix-free
// cover of the subtree at word position `pos`: either a single word ends
// exactly here, or every generator branch is present and itself covered.
bool words_cover_subtree(const std::vector<const PermutationWord*>& words,
                         std::size_t lo, std::size_t hi, std::size_t pos,
                         const std::vector<Permutation>& perms, std::string* reason) {
    if (lo + 1 == hi && words[lo]->size() == pos) return true;
    for (std::size_t i = lo; i < hi; ++i)
        if (words[i]->size() <= pos)
            return fail(reason, "leaf word '" + serialize_word(*words[i]) +
                                    "' is duplicated or a prefix of another leaf");
    std::size_t cursor = lo;
    for (const Permutation& sigma : perms) {
        std::size_t branch_lo = cursor;
        while (cursor < hi && (*words[cursor])[pos] == sigma) ++cursor;
        if (branch_lo == cursor)
            return fail(reason, "frontier incomplete: no leaf under branch '" +
                                    serialize_word({sigma}) + "' at depth " +
                                    std::to_string(pos + 1));
        if (!words_cover_subtree(words, branch_lo, cursor, pos + 1, perms, reason))
            return false;
    }
    if (cursor != hi)
        return fail(reason, "leaf words contain an out-of-order branch");
    return true;
}

bool check_frontier_cover(const std::vector<Leaf>& leaves,
                          const std::vector<Permutation>& perms, std::string* reason) {
    std::vector<const PermutationWord*> words;
    words.reserve(leaves.size());
    for (const Leaf& l : leaves) words.push_back(&l.word);
    std::sort(words.begin(), words.end(),
              [](const PermutationWord* a, const PermutationWord* b) {
                  return word_less(*a, *b);
              });
    return words_cover_subtree(words, 0, words.size(), 0, perms, reason);
}

}  // namespace

bool replay_certificate(const Form& f, const Certificate& cert, std::string* reason) {
    if (f.is_zero()) throw std::invalid_argument("replay_certificate: zero form");
    int n = f.variable_count();
    for (const Leaf& leaf : cert.leaves) require_valid_word(leaf.word, n);
    if (cert.witness) {
        require_valid_word(cert.witness->word, n);
        if (cert.witness->point.size() != n)
            throw std::invalid_argument("witness point arity mismatch");
    }
    for (const ZeroRecord& z : cert.zeros) {
        require_valid_word(z.word, n);
        if (z.point.size() != n)
            throw std::invalid_argument("zero record point arity mismatch");
    }

    for (const Leaf& leaf : cert.leaves) {
        SignClass got = sign_classify(expand(f, product_chain(leaf.word, n)));
        if (got != leaf.cls)
            return fail(reason, "leaf word=" + serialize_word(leaf.word) +
                                    ": stored class " + to_string(leaf.cls) +
                                    ", recomputed " + to_string(got));
    }

    switch (cert.verdict) {
        case Verdict::Positive:
        case Verdict::Nonnegative: {
            if (cert.witness)
                return fail(reason, "positive-side verdict carries a witness");
            if (cert.leaves.empty())
                return fail(reason, "positive-side verdict with no leaves");
            for (const Leaf& leaf : cert.leaves) {
                bool ok = cert.verdict == Verdict::Positive
                              ? leaf.cls == SignClass::AllPositive
                              : (leaf.cls == SignClass::AllPositive ||
                                 leaf.cls == SignClass::AllNonnegative);
                if (!ok)
                    return fail(reason, "leaf word=" + serialize_word(leaf.word) +
                                            " class " + to_string(leaf.cls) +
                                            " cannot support verdict " +
                                            to_string(cert.verdict));
            }
            std::size_t deepest = 0;
            for (const Leaf& l : cert.leaves) deepest = std::max(deepest, l.word.size());
            if (static_cast<int>(deepest) != cert.depth_used)
                return fail(reason, "depth-used disagrees with the deepest leaf");
            if (!check_frontier_cover(cert.leaves, all_permutations(n), reason))
                return false;
            break;
        }
        case Verdict::NegativeWitness: {
            if (!cert.witness) return fail(reason, "NegativeWitness verdict without witness");
            const NegativeWitness& w = *cert.witness;
            if (static_cast<int>(w.word.size()) != cert.depth_used)
                return fail(reason, "depth-used disagrees with the witness word");
            if (!w.point.on_simplex())
                return fail(reason, "witness point is not on the simplex");
            if (!contains_point(product_chain(w.word, n), w.point).contained)
                return fail(reason, "witness point lies outside its cell");
            Rational value = f.evaluate(w.point);
            if (value != w.value)
                return fail(reason, "witness value mismatch: stored " +
                                        to_string(w.value) + ", recomputed " +
                                        to_string(value));
            if (sign(value) >= 0)
                return fail(reason, "witness value is not negative");
            break;
        }
        case Verdict::Undecided:
            if (cert.witness)
                return fail(reason, "Undecided verdict carries a witness");
            break;
    }

    for (const ZeroRecord& z : cert.zeros) {
        if (!z.point.on_simplex())
            return fail(reason, "zero record point is not on the simplex");
        if (!contains_point(product_chain(z.word, n), z.point).contained)
            return fail(reason, "zero record point lies outside its cell");
        if (sign(f.evaluate(z.point)) != 0)
            return fail(reason, "zero record does not evaluate to zero");
    }
    return true;
}

}  // namespace simplexcert
