#include "mrphase/mr_graph.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "mrphase/errors.hpp"

namespace mrphase {

std::string_view color_name(Color color) {
    switch (color) {
        case Color::gray: return "gray";
        case Color::red: return "red";
        case Color::blue: return "blue";
        case Color::white: return "white";
    }
    return "?";
}

std::string_view provenance_name(Provenance provenance) {
    switch (provenance) {
        case Provenance::c1: return "C1";
        case Provenance::c2: return "C2";
        case Provenance::c3: return "C3";
        case Provenance::c4a: return "C4a";
        case Provenance::c4b: return "C4b";
        case Provenance::parity_anchor: return "parity-anchor";
        case Provenance::bisect_half: return "bisect-half";
    }
    return "?";
}

VertexId VertexId::interval(std::size_t i, std::size_t s, std::size_t t) {
    assert(s < t);
    return VertexId{Tag::interval, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(s),
                    static_cast<std::uint32_t>(t)};
}

VertexId VertexId::special_b() { return VertexId{Tag::special_b, 0, 0, 0}; }

VertexId VertexId::allele(std::size_t i, std::size_t z) {
    return VertexId{Tag::allele, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(z),
                    static_cast<std::uint32_t>(z)};
}

std::size_t VertexIdHash::operator()(const VertexId& v) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(v.tag);
    h = h * 0x9E3779B97F4A7C15ULL + v.individual;
    h = h * 0x9E3779B97F4A7C15ULL + v.s;
    h = h * 0x9E3779B97F4A7C15ULL + v.t;
    return static_cast<std::size_t>(h ^ (h >> 29));
}

MRGraph::MRGraph() { add_vertex(VertexRecord{VertexId::special_b(), VertexKind::special, Color::blue, false}); }

MRGraph::MRGraph(Pedigree pedigree, GenotypeMatrix genotypes)
    : pedigree_(std::move(pedigree)), genotypes_(std::move(genotypes)) {
    add_vertex(VertexRecord{VertexId::special_b(), VertexKind::special, Color::blue, false});
}

std::optional<std::size_t> MRGraph::find(const VertexId& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::size_t> MRGraph::gray_vertices() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (vertices_[v].color == Color::gray) out.push_back(v);
    return out;
}

bool MRGraph::has_allele_vertices(std::size_t individual) const {
    for (const auto& v : vertices_)
        if (v.id.tag == VertexId::Tag::allele && v.id.individual == individual) return true;
    return false;
}

std::size_t MRGraph::add_vertex(const VertexRecord& record) {
    if (record.color == Color::white) throw std::invalid_argument("white vertices are never materialized");
    auto [it, inserted] = index_.emplace(record.id, vertices_.size());
    if (!inserted) throw std::invalid_argument("duplicate vertex " + label(it->second));
    vertices_.push_back(record);
    return vertices_.size() - 1;
}

std::size_t MRGraph::add_edge(SignedEdge edge) {
    if (edge.u >= vertices_.size() || edge.v >= vertices_.size())
        throw std::invalid_argument("edge endpoint does not exist");
    edges_.push_back(std::move(edge));
    return edges_.size() - 1;
}

std::size_t MRGraph::add_parity_set(ParityConstraintSet set) {
    for (std::size_t v : set.members)
        if (v >= vertices_.size()) throw std::invalid_argument("parity set member does not exist");
    parity_sets_.push_back(std::move(set));
    return parity_sets_.size() - 1;
}

void MRGraph::remove_edges(const std::vector<bool>& doomed) {
    std::vector<SignedEdge> kept;
    kept.reserve(edges_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e)
        if (e >= doomed.size() || !doomed[e]) kept.push_back(std::move(edges_[e]));
    edges_ = std::move(kept);
}

std::string MRGraph::label(std::size_t v) const {
    const auto& id = vertices_[v].id;
    auto who = [&](std::uint32_t i) {
        return i < pedigree_.size() ? std::to_string(pedigree_[i].id) : "#" + std::to_string(i);
    };
    switch (id.tag) {
        case VertexId::Tag::special_b: return "b";
        case VertexId::Tag::allele: return who(id.individual) + "@" + std::to_string(id.s + 1);
        case VertexId::Tag::interval:
            return who(id.individual) + "[" + std::to_string(id.s + 1) + "," + std::to_string(id.t + 1) + "]";
    }
    return "?";
}

Coloring coloring_from_gray_bits(const MRGraph& graph, std::uint64_t bits) {
    Coloring c;
    c.colors.reserve(graph.vertex_count());
    std::size_t k = 0;
    for (const auto& v : graph.vertices()) {
        if (v.color == Color::gray)
            c.colors.push_back(((bits >> k++) & 1U) ? Color::red : Color::blue);
        else
            c.colors.push_back(v.color);
    }
    return c;
}

Color color_for_genotype_pair(Genotype gs, Genotype gt) {
    if (gs == kHeterozygous && gt == kHeterozygous) return Color::gray;
    if (gs == kHeterozygous || gt == kHeterozygous) return Color::white;
    return gs == gt ? Color::blue : Color::red;
}

namespace {

// Ordered fragment over two sites: maternal (s, t), paternal (s, t).
using Fragment = std::array<Allele, 4>;

std::vector<Fragment> fragments(Genotype gs, Genotype gt) {
    auto options = [](Genotype g) {
        std::vector<std::pair<Allele, Allele>> out;
        if (g == kHeterozygous) {
            out.push_back({0, 1});
            out.push_back({1, 0});
        } else {
            out.push_back({g, g});
        }
        return out;
    };
    std::vector<Fragment> out;
    for (auto [ms, ps] : options(gs))
        for (auto [mt, pt] : options(gt)) out.push_back(Fragment{ms, mt, ps, pt});
    return out;
}

bool transmits(const Fragment& parent, Allele s, Allele t) {
    return (s == parent[0] || s == parent[2]) && (t == parent[1] || t == parent[3]);
}

bool trio_feasible(const std::vector<Fragment>& mother, const std::vector<Fragment>& father,
                   const std::vector<Fragment>& child) {
    for (const auto& c : child)
        for (const auto& m : mother) {
            if (!transmits(m, c[0], c[1])) continue;
            for (const auto& f : father)
                if (transmits(f, c[2], c[3])) return true;
        }
    return false;
}

// Maternal allele of child j at site z forced by a homozygous parent.
std::optional<Allele> pin_value(const Pedigree& pedigree, const GenotypeMatrix& g, std::size_t j, std::size_t z) {
    if (pedigree.is_founder(j) || !g.het(j, z)) return std::nullopt;
    std::size_t mother = *pedigree[j].mother;
    std::size_t father = *pedigree[j].father;
    if (!g.het(mother, z)) return g(mother, z);
    if (!g.het(father, z)) return static_cast<Allele>(1 - g(father, z));
    return std::nullopt;
}

std::uint64_t pair_key(std::size_t u, std::size_t v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
}

EdgeSign sign_for(Allele disagreement_offset) {
    return disagreement_offset == 0 ? EdgeSign::positive : EdgeSign::negative;
}

}  // namespace

std::optional<Color> mendelian_forced_color(const Pedigree& pedigree, const GenotypeMatrix& genotypes, std::size_t i,
                                            std::size_t s, std::size_t t) {
    auto frag = [&](std::size_t x) { return fragments(genotypes(x, s), genotypes(x, t)); };
    auto restricted = [&](Color color) {
        std::vector<Fragment> out;
        for (const auto& f : frag(i))
            if ((f[0] != f[1]) == (color == Color::red)) out.push_back(f);
        return out;
    };
    auto feasible = [&](Color color) {
        auto own = restricted(color);
        if (!pedigree.is_founder(i) &&
            !trio_feasible(frag(*pedigree[i].mother), frag(*pedigree[i].father), own))
            return false;
        for (std::size_t c : pedigree.children(i)) {
            bool as_mother = pedigree[c].mother == i;
            const auto mother = as_mother ? own : frag(*pedigree[c].mother);
            const auto father = as_mother ? frag(*pedigree[c].father) : own;
            if (!trio_feasible(mother, father, frag(c))) return false;
        }
        return true;
    };
    bool red = feasible(Color::red);
    bool blue = feasible(Color::blue);
    if (!red && !blue)
        throw DataError("Mendelian impossible: no phase fits individual " + std::to_string(pedigree[i].id) +
                            " at sites " + std::to_string(s + 1) + "," + std::to_string(t + 1),
                        pedigree[i].id, s + 1);
    if (red && blue) return std::nullopt;
    return red ? Color::red : Color::blue;
}

MRGraphBuilder::MRGraphBuilder(Pedigree pedigree, GenotypeMatrix genotypes)
    : graph_(std::move(pedigree), std::move(genotypes)) {
    const auto& ped = graph_.pedigree();
    const auto& g = graph_.genotypes();
    if (ped.size() != g.rows()) throw StructuralError("pedigree size does not match genotype rows");
    het_sites_.resize(ped.size());
    pinned_sites_.resize(ped.size());
    pending_.resize(ped.size());
    for (std::size_t i = 0; i < ped.size(); ++i) {
        het_sites_[i] = g.het_sites(i);
        for (std::size_t z : het_sites_[i])
            if (pin(i, z)) pinned_sites_[i].push_back(z);
    }
}

std::optional<Allele> MRGraphBuilder::pin(std::size_t j, std::size_t z) const {
    return pin_value(graph_.pedigree(), graph_.genotypes(), j, z);
}

std::optional<std::size_t> MRGraphBuilder::nearest_pin(std::size_t j, std::size_t z) const {
    const auto& pins = pinned_sites_[j];
    if (pins.empty()) return std::nullopt;
    auto it = std::lower_bound(pins.begin(), pins.end(), z);
    if (it == pins.end()) return pins.back();
    if (*it == z || it == pins.begin()) return *it;
    std::size_t right = *it;
    std::size_t left = *(it - 1);
    return (z - left <= right - z) ? left : right;
}

std::vector<std::size_t> MRGraphBuilder::regular_cover(std::size_t i, std::size_t s, std::size_t t) {
    const auto& het = het_sites_[i];
    auto first = std::lower_bound(het.begin(), het.end(), s);
    std::vector<std::size_t> cover;
    for (auto it = first; it + 1 != het.end() && *(it + 1) <= t; ++it) {
        auto id = VertexId::interval(i, *it, *(it + 1));
        auto v = graph_.find(id);
        if (!v) {
            auto forced = mendelian_forced_color(graph_.pedigree(), graph_.genotypes(), i, *it, *(it + 1));
            v = graph_.add_vertex(VertexRecord{id, VertexKind::regular, forced.value_or(Color::gray), true});
        }
        cover.push_back(*v);
    }
    return cover;
}

std::optional<std::size_t> MRGraphBuilder::mr_vertex(std::size_t i, std::size_t s, std::size_t t) {
    if (s >= t) throw std::invalid_argument("mr_vertex requires s < t");
    auto id = VertexId::interval(i, s, t);
    if (auto v = graph_.find(id)) return v;
    const auto& g = graph_.genotypes();
    Color color = color_for_genotype_pair(g(i, s), g(i, t));
    if (color == Color::white) return std::nullopt;
    if (color != Color::gray) return graph_.add_vertex(VertexRecord{id, VertexKind::supplementary, color, false});

    const auto& het = het_sites_[i];
    auto at = std::lower_bound(het.begin(), het.end(), s);
    bool regular = at + 1 != het.end() && *(at + 1) == t;
    if (regular) {
        auto forced = mendelian_forced_color(graph_.pedigree(), g, i, s, t);
        return graph_.add_vertex(VertexRecord{id, VertexKind::regular, forced.value_or(Color::gray), true});
    }
    auto cover = regular_cover(i, s, t);
    auto forced = mendelian_forced_color(graph_.pedigree(), g, i, s, t);
    std::size_t v = graph_.add_vertex(VertexRecord{id, VertexKind::supplementary, forced.value_or(Color::gray), true});
    ParityConstraintSet set;
    set.kind = ParityConstraintSet::Kind::interval;
    set.members.push_back(v);
    set.members.insert(set.members.end(), cover.begin(), cover.end());
    set.parity_color = Color::red;
    set.supplementary = v;
    graph_.add_parity_set(std::move(set));
    return v;
}

std::optional<std::size_t> MRGraphBuilder::ensure_interval(std::size_t i, std::size_t a, std::size_t b) {
    if (a == b) return std::nullopt;
    return mr_vertex(i, std::min(a, b), std::max(a, b));
}

void MRGraphBuilder::create_regular_vertices() {
    const auto& ped = graph_.pedigree();
    for (std::size_t i = 0; i < ped.size(); ++i) {
        const auto& het = het_sites_[i];
        for (std::size_t k = 0; k + 1 < het.size(); ++k) mr_vertex(i, het[k], het[k + 1]);
    }
    // Phases between consecutive pinned sites are fixed; the supplementary
    // vertex and its parity set carry that constraint.
    for (std::size_t j = 0; j < ped.size(); ++j) {
        const auto& pins = pinned_sites_[j];
        for (std::size_t k = 0; k + 1 < pins.size(); ++k) mr_vertex(j, pins[k], pins[k + 1]);
    }
}

void MRGraphBuilder::add_positive_dedup(std::size_t u, std::size_t v, Provenance provenance, std::vector<Term> terms) {
    auto key = pair_key(u, v);
    auto it = positive_keys_.find(key);
    if (it != positive_keys_.end()) {
        auto& existing = graph_.edge_at(it->second);
        if (existing.terms.empty() && !terms.empty()) existing.terms = std::move(terms);
        return;
    }
    positive_keys_.emplace(key, graph_.add_edge(SignedEdge{u, v, EdgeSign::positive, provenance, true, std::move(terms)}));
}

bool MRGraphBuilder::covered(std::size_t coparent, std::size_t child, std::size_t s, std::size_t t) {
    const auto& g = graph_.genotypes();
    const auto& het = het_sites_[coparent];
    auto first = std::lower_bound(het.begin(), het.end(), s);
    for (auto it = first; it + 1 != het.end() && *(it + 1) <= t; ++it)
        if (color_for_genotype_pair(g(child, *it), g(child, *(it + 1))) == Color::white) return false;
    return true;
}

void MRGraphBuilder::mr_trio(std::size_t parent_vertex, std::size_t child) {
    const auto& ped = graph_.pedigree();
    const auto& g = graph_.genotypes();
    const VertexRecord rec = graph_.vertex(parent_vertex);
    if (rec.kind != VertexKind::regular || !rec.het_pair) throw std::invalid_argument("mr_trio needs a regular vertex");
    const std::size_t i = rec.id.individual;
    const std::size_t s = rec.id.s;
    const std::size_t t = rec.id.t;
    Side side;
    if (ped[child].mother == i)
        side = Side::maternal;
    else if (ped[child].father == i)
        side = Side::paternal;
    else
        throw std::invalid_argument("mr_trio: not a child of the vertex's individual");
    const std::size_t coparent = *ped.parent(child, other_side(side));
    const Term term{static_cast<std::uint32_t>(child), side, static_cast<std::uint32_t>(s),
                    static_cast<std::uint32_t>(t)};

    auto jv = mr_vertex(child, s, t);
    auto cv = mr_vertex(coparent, s, t);
    if (jv) {
        // Cases 1 and 2: the child's phase over [s,t] is orientation-free.
        add_positive_dedup(parent_vertex, *jv, cv ? Provenance::c1 : Provenance::c2, {term});
        if (!cv) return;
        const auto& co = graph_.vertex(*cv);
        if (co.kind == VertexKind::regular) {
            Term co_term{term.child, other_side(side), term.s, term.t};
            add_positive_dedup(*cv, *jv, Provenance::c1, {co_term});
        } else if (!co.het_pair || covered(coparent, child, s, t)) {
            // Counts nothing beyond the co-parent's own regular edges; removed
            // later by cleanup or by inert-edge pruning.
            add_positive_dedup(*cv, *jv, Provenance::c1, {});
        }
        return;
    }

    const std::size_t z = g.het(child, s) ? s : t;
    const std::size_t zbar = z == s ? t : s;
    if (!g.het(coparent, z)) {
        if (cv) {
            // Case 3 with a homozygous co-parent over [s,t].
            graph_.add_edge(SignedEdge{parent_vertex, *cv, EdgeSign::negative, Provenance::c3, true, {term}});
        } else {
            // Case 4(b): the child's allele at z is pinned by the co-parent.
            Allele x = static_cast<Allele>(1 ^ g(coparent, z) ^ g(child, zbar));
            graph_.add_edge(SignedEdge{parent_vertex, graph_.special_b(), sign_for(x), Provenance::c4b, true, {term}});
        }
        return;
    }
    // The term depends on the child's maternal allele u at z: violated iff
    // color(i_st) != u(z) xor c.
    Allele c = static_cast<Allele>((side == Side::paternal ? 1 : 0) ^ g(child, zbar));
    pending_[child].push_back(PendingTerm{parent_vertex, z, c, cv ? Provenance::c3 : Provenance::c4a, term});
}

void MRGraphBuilder::run_trios() {
    const auto& ped = graph_.pedigree();
    for (std::size_t i = 0; i < ped.size(); ++i) {
        if (ped.children(i).empty()) continue;
        const auto& het = het_sites_[i];
        for (std::size_t k = 0; k + 1 < het.size(); ++k) {
            std::size_t v = *graph_.find(VertexId::interval(i, het[k], het[k + 1]));
            for (std::size_t child : ped.children(i)) mr_trio(v, child);
        }
    }
}

void MRGraphBuilder::resolve_with_alleles(std::size_t j, const std::vector<PendingTerm>& terms) {
    std::map<std::size_t, std::size_t> allele_vertex;
    for (const auto& p : terms) {
        if (allele_vertex.count(p.z)) continue;
        allele_vertex[p.z] = graph_.add_vertex(VertexRecord{VertexId::allele(j, p.z), VertexKind::allele, Color::gray, false});
    }
    for (const auto& p : terms)
        graph_.add_edge(SignedEdge{p.parent_vertex, allele_vertex.at(p.z), sign_for(p.c), p.provenance, true, {p.term}});
    for (auto it = allele_vertex.begin(); std::next(it) != allele_vertex.end(); ++it) {
        auto next = std::next(it);
        ParityConstraintSet set;
        set.kind = ParityConstraintSet::Kind::allele_link;
        set.members = {it->second, next->second};
        auto cover = regular_cover(j, it->first, next->first);
        set.members.insert(set.members.end(), cover.begin(), cover.end());
        set.parity_color = Color::red;
        graph_.add_parity_set(std::move(set));
    }
}

void MRGraphBuilder::resolve_orientations() {
    const auto& ped = graph_.pedigree();
    for (std::size_t j = 0; j < ped.size(); ++j) {
        const auto terms = pending_[j];
        if (terms.empty()) continue;
        if (!pinned_sites_[j].empty()) {
            // u(z) = u(zp) xor phase(z, zp) with u(zp) fixed by a pin.
            for (const auto& p : terms) {
                std::size_t zp = *nearest_pin(j, p.z);
                Allele k = static_cast<Allele>(*pin(j, zp) ^ p.c);
                auto target = ensure_interval(j, p.z, zp);
                graph_.add_edge(SignedEdge{p.parent_vertex, target.value_or(graph_.special_b()), sign_for(k),
                                           p.provenance, true, {p.term}});
            }
            continue;
        }
        // A single orientation-dependent term is always satisfiable by
        // choosing the orientation.
        if (terms.size() == 1) continue;
        if (terms.size() == 2) {
            const auto& a = terms[0];
            const auto& b = terms[1];
            Allele k = static_cast<Allele>(a.c ^ b.c);
            Provenance prov = (a.provenance == Provenance::c3 && b.provenance == Provenance::c3) ? Provenance::c3
                                                                                                 : Provenance::c4a;
            if (a.z == b.z) {
                graph_.add_edge(SignedEdge{a.parent_vertex, b.parent_vertex, sign_for(k), prov, true, {a.term, b.term}});
                continue;
            }
            const auto& va = graph_.vertex(a.parent_vertex).id;
            const auto& vb = graph_.vertex(b.parent_vertex).id;
            if (va.individual == vb.individual && (va.t == vb.s || vb.t == va.s)) {
                auto joined = mr_vertex(va.individual, std::min(va.s, vb.s), std::max(va.t, vb.t));
                auto phase = ensure_interval(j, a.z, b.z);
                graph_.add_edge(SignedEdge{*joined, *phase, sign_for(k), Provenance::c4a, true, {a.term, b.term}});
                continue;
            }
        }
        resolve_with_alleles(j, terms);
    }
}

void MRGraphBuilder::cleanup() { cleanup_supplementary_edges(graph_); }

void MRGraphBuilder::prune_inert_edges() {
    const auto& ped = graph_.pedigree();
    const auto& g = graph_.genotypes();
    // Each vertex's red bit as a xor of maternal-allele variables (individual,
    // site) plus a constant. Pinned variables are constants.
    auto expand = [&](std::size_t v, std::vector<std::uint64_t>& vars, Allele& constant) {
        const auto& rec = graph_.vertex(v);
        auto add_var = [&](std::size_t i, std::size_t z) {
            if (auto p = pin_value(ped, g, i, z)) {
                constant ^= *p;
                return;
            }
            vars.push_back((static_cast<std::uint64_t>(i) << 32) | z);
        };
        switch (rec.id.tag) {
            case VertexId::Tag::special_b: break;
            case VertexId::Tag::allele: add_var(rec.id.individual, rec.id.s); break;
            case VertexId::Tag::interval:
                if (rec.het_pair) {
                    add_var(rec.id.individual, rec.id.s);
                    add_var(rec.id.individual, rec.id.t);
                } else {
                    constant ^= rec.color == Color::red ? 1 : 0;
                }
                break;
        }
    };
    std::vector<bool> doomed(graph_.edges().size(), false);
    for (std::size_t e = 0; e < graph_.edges().size(); ++e) {
        const auto& edge = graph_.edges()[e];
        std::vector<std::uint64_t> vars;
        Allele constant = edge.sign == EdgeSign::negative ? 1 : 0;
        expand(edge.u, vars, constant);
        expand(edge.v, vars, constant);
        std::sort(vars.begin(), vars.end());
        bool free = false;
        for (std::size_t k = 0; k < vars.size();) {
            std::size_t r = k;
            while (r < vars.size() && vars[r] == vars[k]) ++r;
            if ((r - k) % 2 == 1) free = true;
            k = r;
        }
        if (!free && constant == 0) doomed[e] = true;
    }
    graph_.remove_edges(doomed);
}

MRGraph MRGraphBuilder::finish() && { return std::move(graph_); }

MRGraph build_mr_graph(const Pedigree& pedigree, const GenotypeMatrix& genotypes, const BuildOptions& options) {
    MRGraphBuilder builder(pedigree, genotypes);
    builder.create_regular_vertices();
    builder.run_trios();
    builder.resolve_orientations();
    if (options.cleanup) builder.cleanup();
    if (options.prune_inert) builder.prune_inert_edges();
    return std::move(builder).finish();
}

void cleanup_supplementary_edges(MRGraph& graph) {
    const auto& ped = graph.pedigree();
    std::set<std::uint64_t> linked;
    for (const auto& e : graph.edges()) linked.insert(pair_key(e.u, e.v));

    std::vector<std::size_t> order;
    for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
        const auto& rec = graph.vertex(v);
        if (rec.kind == VertexKind::supplementary && rec.het_pair) order.push_back(v);
    }
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return graph.vertex(a).id < graph.vertex(b).id; });

    std::vector<std::vector<std::size_t>> incident(graph.vertex_count());
    for (std::size_t e = 0; e < graph.edges().size(); ++e) {
        incident[graph.edges()[e].u].push_back(e);
        incident[graph.edges()[e].v].push_back(e);
    }
    std::vector<bool> doomed(graph.edges().size(), false);
    for (std::size_t x : order) {
        const auto& xid = graph.vertex(x).id;
        const std::size_t i = xid.individual;
        std::vector<std::size_t> cover;
        for (const auto& set : graph.parity_sets())
            if (set.supplementary == x)
                for (std::size_t m : set.members)
                    if (m != x) cover.push_back(m);
        for (std::size_t e : incident[x]) {
            const auto& edge = graph.edges()[e];
            if (doomed[e] || edge.sign != EdgeSign::positive || edge.provenance != Provenance::c1) continue;
            const std::size_t y = edge.u == x ? edge.v : edge.u;
            const auto& yid = graph.vertex(y).id;
            if (yid.tag != VertexId::Tag::interval || yid.s != xid.s || yid.t != xid.t) continue;
            const std::size_t j = yid.individual;
            if (j >= ped.size() || (ped[j].mother != i && ped[j].father != i)) continue;
            bool all = !cover.empty();
            for (std::size_t r : cover) {
                const auto& rid = graph.vertex(r).id;
                auto jr = graph.find(VertexId::interval(j, rid.s, rid.t));
                if (!jr || !linked.count(pair_key(r, *jr))) {
                    all = false;
                    break;
                }
            }
            if (all) doomed[e] = true;
        }
    }
    graph.remove_edges(doomed);
}

bool edge_disagrees(const SignedEdge& edge, const Coloring& coloring) {
    bool same = coloring[edge.u] == coloring[edge.v];
    return edge.sign == EdgeSign::positive ? !same : same;
}

std::vector<std::size_t> disagreeing_edges(const MRGraph& graph, const Coloring& coloring) {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < graph.edges().size(); ++e)
        if (edge_disagrees(graph.edges()[e], coloring)) out.push_back(e);
    return out;
}

bool parity_satisfied(const ParityConstraintSet& set, const Coloring& coloring) {
    std::size_t count = 0;
    for (std::size_t v : set.members)
        if (coloring[v] == set.parity_color) ++count;
    return count % 2 == 0;
}

bool all_parity_satisfied(const MRGraph& graph, const Coloring& coloring) {
    for (const auto& set : graph.parity_sets())
        if (!parity_satisfied(set, coloring)) return false;
    return true;
}

bool respects_fixed_colors(const MRGraph& graph, const Coloring& coloring) {
    if (coloring.colors.size() != graph.vertex_count()) return false;
    for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
        Color c = coloring[v];
        if (c != Color::red && c != Color::blue) return false;
        Color fixed = graph.vertex(v).color;
        if (fixed != Color::gray && fixed != c) return false;
    }
    return true;
}

HaplotypeConfiguration extract_haplotypes(const MRGraph& graph, const Coloring& coloring) {
    if (!respects_fixed_colors(graph, coloring)) throw std::invalid_argument("coloring recolors a forced vertex");
    if (!all_parity_satisfied(graph, coloring)) throw std::invalid_argument("unsatisfied parity set");
    const auto& ped = graph.pedigree();
    const auto& g = graph.genotypes();
    const std::size_t m = g.sites();
    HaplotypeConfiguration config(ped.size(), m);
    std::vector<bool> settle_by_cost(ped.size(), false);

    for (std::size_t i = 0; i < ped.size(); ++i) {
        std::vector<Allele> h(m);
        std::vector<Allele> hc(m);
        std::optional<std::size_t> previous;
        for (std::size_t s = 0; s < m; ++s) {
            if (!g.het(i, s)) {
                h[s] = hc[s] = g(i, s);
                continue;
            }
            if (!previous) {
                h[s] = 0;
            } else {
                auto v = graph.find(VertexId::interval(i, *previous, s));
                if (!v) throw std::logic_error("missing regular vertex " + std::to_string(ped[i].id));
                h[s] = static_cast<Allele>(h[*previous] ^ (coloring[*v] == Color::red ? 1 : 0));
            }
            hc[s] = static_cast<Allele>(1 - h[s]);
            previous = s;
        }
        // Orientation: which of (h, hc) is maternal.
        Allele flip = 0;
        if (!ped.is_founder(i) && previous) {
            std::optional<Allele> anchored;
            for (std::size_t z = 0; z < m && !anchored; ++z) {
                if (auto p = pin_value(ped, g, i, z)) anchored = static_cast<Allele>(h[z] ^ *p);
                else if (auto a = graph.find(VertexId::allele(i, z)))
                    anchored = static_cast<Allele>(h[z] ^ (coloring[*a] == Color::red ? 1 : 0));
            }
            if (anchored)
                flip = *anchored;
            else
                settle_by_cost[i] = true;
        }
        config[i].maternal = flip ? hc : h;
        config[i].paternal = flip ? h : hc;
    }

    // Unanchored children take the cheaper orientation; parents' own
    // orientation does not change a child's alternation count.
    for (std::size_t j = 0; j < ped.size(); ++j) {
        if (!settle_by_cost[j]) continue;
        auto cost = [&]() {
            auto a = pair_recombinations(ped, config, j, Side::maternal);
            auto b = pair_recombinations(ped, config, j, Side::paternal);
            return (a && b) ? *a + *b : std::numeric_limits<int>::max();
        };
        int keep = cost();
        std::swap(config[j].maternal, config[j].paternal);
        int swapped = cost();
        if (swapped >= keep) std::swap(config[j].maternal, config[j].paternal);
    }
    return config;
}

Coloring induced_coloring(const MRGraph& graph, const HaplotypeConfiguration& config) {
    Coloring c;
    c.colors.reserve(graph.vertex_count());
    for (const auto& v : graph.vertices()) {
        switch (v.id.tag) {
            case VertexId::Tag::special_b: c.colors.push_back(Color::blue); break;
            case VertexId::Tag::allele:
                c.colors.push_back(config[v.id.individual].maternal[v.id.s] ? Color::red : Color::blue);
                break;
            case VertexId::Tag::interval: {
                const auto& h = config[v.id.individual].maternal;
                c.colors.push_back(h[v.id.s] != h[v.id.t] ? Color::red : Color::blue);
                break;
            }
        }
    }
    return c;
}

}  // namespace mrphase
