#include "mrphase/bipartizer.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

#include "gf2.hpp"
#include "mrphase/errors.hpp"

namespace mrphase {

std::size_t AugmentedGraph::removable_count() const {
    return static_cast<std::size_t>(
        std::count_if(edges.begin(), edges.end(), [](const AugmentedEdge& e) { return e.removable; }));
}

AugmentedGraph bisect_positive_edges(const MRGraph& graph) {
    AugmentedGraph out;
    out.original_vertices = graph.vertex_count();
    out.vertex_count = graph.vertex_count();
    for (const auto& v : graph.vertices()) out.fixed.push_back(v.color);
    for (std::size_t e = 0; e < graph.edges().size(); ++e) {
        const auto& edge = graph.edges()[e];
        if (edge.sign == EdgeSign::negative) {
            out.edges.push_back(AugmentedEdge{edge.u, edge.v, edge.removable, e, edge.provenance});
            continue;
        }
        std::size_t x = out.vertex_count++;
        out.edges.push_back(AugmentedEdge{edge.u, x, edge.removable, e, Provenance::bisect_half});
        out.edges.push_back(AugmentedEdge{x, edge.v, edge.removable, e, Provenance::bisect_half});
    }
    out.parity_sets.assign(graph.parity_sets().begin(), graph.parity_sets().end());
    return out;
}

AugmentedGraph attach_parity_anchors(AugmentedGraph graph) {
    if (graph.red_anchor) return graph;
    std::size_t vr = graph.vertex_count++;
    std::size_t vb = graph.vertex_count++;
    graph.red_anchor = vr;
    graph.blue_anchor = vb;
    graph.edges.push_back(AugmentedEdge{vr, vb, false, std::nullopt, Provenance::parity_anchor});
    for (std::size_t v = 0; v < graph.original_vertices; ++v) {
        if (graph.fixed[v] == Color::red)
            graph.edges.push_back(AugmentedEdge{v, vb, false, std::nullopt, Provenance::parity_anchor});
        else if (graph.fixed[v] == Color::blue)
            graph.edges.push_back(AugmentedEdge{v, vr, false, std::nullopt, Provenance::parity_anchor});
    }
    return graph;
}

namespace {

// Tests one removal set: 2-colors the residual graph, then fixes the
// polarity of every component without an anchor so that all parity sets hold.
class Checker {
public:
    Checker(const AugmentedGraph& graph, bool early_exit)
        : graph_(graph),
          early_exit_(early_exit),
          offsets_(graph.vertex_count + 1, 0),
          side_(graph.vertex_count),
          component_(graph.vertex_count),
          removed_(graph.edges.size(), 0) {
        for (const auto& e : graph.edges) {
            ++offsets_[e.u + 1];
            ++offsets_[e.v + 1];
        }
        for (std::size_t v = 0; v < graph.vertex_count; ++v) offsets_[v + 1] += offsets_[v];
        adjacency_.resize(offsets_.back());
        std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
        for (std::size_t e = 0; e < graph.edges.size(); ++e) {
            adjacency_[fill[graph.edges[e].u]++] = {graph.edges[e].v, e};
            adjacency_[fill[graph.edges[e].v]++] = {graph.edges[e].u, e};
        }
        order_.reserve(graph.vertex_count);
        if (graph.red_anchor) order_.push_back(*graph.red_anchor);
        for (std::size_t v = 0; v < graph.vertex_count; ++v)
            if (v != graph.red_anchor) order_.push_back(v);
    }

    void set_removed(std::size_t e, bool value) { removed_[e] = value ? 1 : 0; }

    // On success, colors() holds the final coloring.
    bool check(std::uint64_t& traversals) {
        std::fill(side_.begin(), side_.end(), std::int8_t{-1});
        std::vector<bool> anchored;
        bool conflict = false;
        std::size_t components = 0;
        for (std::size_t root : order_) {
            if (side_[root] >= 0) continue;
            ++traversals;
            std::size_t c = components++;
            anchored.push_back(graph_.red_anchor && root == *graph_.red_anchor);
            side_[root] = 0;
            component_[root] = c;
            stack_.clear();
            stack_.push_back(root);
            while (!stack_.empty()) {
                std::size_t v = stack_.back();
                stack_.pop_back();
                for (std::size_t k = offsets_[v]; k < offsets_[v + 1]; ++k) {
                    auto [w, e] = adjacency_[k];
                    if (removed_[e]) continue;
                    if (side_[w] < 0) {
                        side_[w] = static_cast<std::int8_t>(1 - side_[v]);
                        component_[w] = c;
                        stack_.push_back(w);
                    } else if (side_[w] == side_[v]) {
                        conflict = true;
                        if (early_exit_) return false;
                    }
                }
            }
        }
        if (conflict) return false;

        std::vector<std::optional<std::size_t>> variable(components);
        std::size_t vars = 0;
        for (std::size_t c = 0; c < components; ++c)
            if (!anchored[c]) variable[c] = vars++;
        gf2::System system(vars);
        for (const auto& set : graph_.parity_sets) {
            gf2::BitRow row(vars);
            bool rhs = false;
            for (std::size_t v : set.members) {
                // red bit = 1 xor side xor polarity; blue bit = side xor polarity.
                bool base = set.parity_color == Color::red ? side_[v] == 0 : side_[v] == 1;
                rhs ^= base;
                if (auto x = variable[component_[v]]) row.flip(*x);
            }
            if (!system.add(std::move(row), rhs)) return false;
        }
        auto polarity = system.solve();
        if (!polarity) return false;
        colors_.assign(graph_.vertex_count, Color::blue);
        for (std::size_t v = 0; v < graph_.vertex_count; ++v) {
            int s = side_[v];
            if (auto x = variable[component_[v]]) s ^= (*polarity)[*x];
            colors_[v] = s == 0 ? Color::red : Color::blue;
        }
        return true;
    }

    const std::vector<Color>& colors() const { return colors_; }

private:
    const AugmentedGraph& graph_;
    bool early_exit_;
    std::vector<std::size_t> offsets_;
    std::vector<std::pair<std::size_t, std::size_t>> adjacency_;
    std::vector<std::int8_t> side_;
    std::vector<std::size_t> component_;
    std::vector<std::uint8_t> removed_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> stack_;
    std::vector<Color> colors_;
};

// Removable edges that lie in some linear dependency of the constraint rows.
// Any other edge can always be satisfied, so no minimum removal set holds it.
std::vector<bool> dependent_edges(const AugmentedGraph& graph) {
    const std::size_t vars = graph.vertex_count;
    std::vector<gf2::BitRow> rows;
    rows.reserve(graph.edges.size() + graph.parity_sets.size());
    for (const auto& e : graph.edges) {
        gf2::BitRow row(vars);
        row.flip(e.u);
        row.flip(e.v);
        rows.push_back(std::move(row));
    }
    for (const auto& set : graph.parity_sets) {
        gf2::BitRow row(vars);
        for (std::size_t v : set.members) row.flip(v);
        rows.push_back(std::move(row));
    }
    // The red anchor's color is fixed, which is one more constraint.
    if (graph.red_anchor) {
        gf2::BitRow row(vars);
        row.flip(*graph.red_anchor);
        rows.push_back(std::move(row));
    }
    auto in_dependency = gf2::rows_in_dependencies(rows, vars);
    in_dependency.resize(graph.edges.size());
    return in_dependency;
}

}  // namespace

Bipartization search_bipartization(const AugmentedGraph& graph, const SearchOptions& options) {
    Bipartization result;
    auto& stats = result.stats;
    Checker checker(graph, options.prune);

    std::vector<std::size_t> removable;
    for (std::size_t e = 0; e < graph.edges.size(); ++e)
        if (graph.edges[e].removable) removable.push_back(e);
    stats.removable_edges = removable.size();

    for (std::size_t e : removable) checker.set_removed(e, true);
    if (!checker.check(stats.traversals))
        throw std::logic_error("infeasible: parity sets cannot be satisfied even with every removable edge removed");
    for (std::size_t e : removable) checker.set_removed(e, false);

    std::vector<std::size_t> candidates;
    // Within a bundle of parallel edges only prefixes are tried: choosing a
    // later copy instead of an earlier one leaves the same residual graph.
    std::vector<std::optional<std::size_t>> previous_copy(graph.edges.size());
    if (options.prune) {
        auto dependent = dependent_edges(graph);
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> last_of_bundle;
        for (std::size_t e : removable) {
            if (!dependent[e]) continue;
            candidates.push_back(e);
            auto key = std::minmax(graph.edges[e].u, graph.edges[e].v);
            auto it = last_of_bundle.find(key);
            if (it != last_of_bundle.end()) previous_copy[e] = it->second;
            last_of_bundle[key] = e;
        }
    } else {
        candidates = removable;
    }
    stats.candidate_edges = candidates.size();

    std::vector<std::uint8_t> chosen(graph.edges.size(), 0);
    auto admissible = [&](const std::vector<std::size_t>& subset) {
        if (!options.prune) return true;
        for (std::size_t e : subset)
            if (previous_copy[e] && !chosen[*previous_copy[e]]) return false;
        for (std::size_t a = 0; a + 1 < subset.size(); ++a) {
            const auto& ea = graph.edges[subset[a]];
            if (ea.provenance != Provenance::bisect_half) continue;
            for (std::size_t b = a + 1; b < subset.size(); ++b) {
                const auto& eb = graph.edges[subset[b]];
                if (eb.provenance == Provenance::bisect_half && eb.original == ea.original) return false;
            }
        }
        return true;
    };

    for (std::size_t k = 0; k <= options.max_k && k <= candidates.size(); ++k) {
        ++stats.levels;
        std::vector<std::size_t> pick(k);
        for (std::size_t a = 0; a < k; ++a) pick[a] = a;
        for (;;) {
            std::vector<std::size_t> subset(k);
            for (std::size_t a = 0; a < k; ++a) subset[a] = candidates[pick[a]];
            for (std::size_t e : subset) chosen[e] = 1;
            if (admissible(subset)) {
                ++stats.subsets_examined;
                for (std::size_t e : subset) checker.set_removed(e, true);
                bool ok = checker.check(stats.traversals);
                for (std::size_t e : subset) checker.set_removed(e, false);
                if (ok) {
                    result.k = k;
                    result.removed = subset;
                    result.colors = checker.colors();
                    return result;
                }
            }
            for (std::size_t e : subset) chosen[e] = 0;
            // Next k-combination in lexicographic order.
            std::size_t a = k;
            while (a > 0 && pick[a - 1] == candidates.size() - k + (a - 1)) --a;
            if (a == 0) break;
            ++pick[a - 1];
            for (std::size_t b = a; b < k; ++b) pick[b] = pick[b - 1] + 1;
        }
    }
    throw BoundExceeded(options.max_k);
}

std::vector<RecombinationEvent> events_from_solution(const MRGraph& graph, const Coloring& coloring,
                                                     const std::vector<std::size_t>& removed) {
    std::vector<RecombinationEvent> events;
    if (removed.empty()) return events;
    const auto& ped = graph.pedigree();
    const auto config = extract_haplotypes(graph, coloring);
    auto violated = [&](const Term& term) {
        const std::size_t parent = *ped.parent(term.child, term.side);
        const auto& inherited = config[term.child].on(term.side);
        const auto& source = config[parent].maternal;
        return (inherited[term.s] == source[term.s]) != (inherited[term.t] == source[term.t]);
    };
    for (std::size_t e : removed) {
        const auto& edge = graph.edges()[e];
        std::optional<Term> hit;
        for (const auto& term : edge.terms) {
            if (!violated(term)) continue;
            if (hit) throw std::logic_error("edge " + std::to_string(e) + " maps to two recombinations");
            hit = term;
        }
        if (!hit) throw std::logic_error("disagreeing edge " + std::to_string(e) + " maps to no recombination");
        events.push_back(RecombinationEvent{hit->child, hit->side, Interval{hit->s, hit->t}});
    }
    std::sort(events.begin(), events.end());
    return events;
}

Solution solve_mrhc(const MRGraph& graph, const AugmentedGraph& augmented, const SearchOptions& options) {
    auto found = search_bipartization(augmented, options);
    Solution solution;
    solution.k = found.k;
    solution.stats = found.stats;
    solution.removed_augmented = found.removed;
    for (std::size_t e : found.removed) {
        const auto& edge = augmented.edges[e];
        assert(edge.removable && edge.original);
        solution.removed.push_back(*edge.original);
    }
    std::sort(solution.removed.begin(), solution.removed.end());
    if (std::adjacent_find(solution.removed.begin(), solution.removed.end()) != solution.removed.end())
        throw std::logic_error("removal set holds both halves of one bisected edge");

    solution.coloring.colors.assign(found.colors.begin(), found.colors.begin() + graph.vertex_count());
    if (disagreeing_edges(graph, solution.coloring) != solution.removed)
        throw std::logic_error("removed edges differ from the disagreeing edges of the solution coloring");
    solution.haplotypes = extract_haplotypes(graph, solution.coloring);
    solution.events = events_from_solution(graph, solution.coloring, solution.removed);
    if (solution.events.size() != solution.k) throw std::logic_error("event count differs from k");
    return solution;
}

Solution solve(const MRGraph& graph, const SearchOptions& options) {
    auto augmented = attach_parity_anchors(bisect_positive_edges(graph));
    return solve_mrhc(graph, augmented, options);
}

}  // namespace mrphase
