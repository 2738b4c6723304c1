#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jordet/catalog.hpp"
#include "jordet/decision.hpp"
#include "jordet/linalg.hpp"
#include "jordet/matrix.hpp"
#include "jordet/sym2.hpp"

namespace jordet {

using Assignment = std::map<std::string, int>; // symbol -> 1-based index

/// A step template with all index symbols bound: concrete witness matrices
/// and concrete relation vectors in Sym^2 coordinates.
template <class R>
struct ConcreteStep {
    bool has_witness = false;
    Matrix<R> left, right, target;
    std::vector<Vec<R>> relations;
};

namespace replay_detail {

inline int resolve(const Assignment& asg, const std::string& sym) {
    auto it = asg.find(sym);
    if (it == asg.end()) throw SchemaError("unbound index symbol '" + sym + "'");
    return it->second;
}

inline bool constraints_hold(const StepTemplate& st, int n, const Assignment& asg) {
    for (const auto& c : st.constraints) {
        switch (c.kind) {
            case Constraint::Kind::NGreater3:
                if (!(n > 3)) return false;
                break;
            case Constraint::Kind::NEquals3:
                if (n != 3) return false;
                break;
            case Constraint::Kind::Neq:
                if (resolve(asg, c.syms[0]) == resolve(asg, c.syms[1])) return false;
                break;
            case Constraint::Kind::Distinct:
                for (std::size_t a = 0; a < c.syms.size(); ++a)
                    for (std::size_t b = a + 1; b < c.syms.size(); ++b)
                        if (resolve(asg, c.syms[a]) == resolve(asg, c.syms[b])) return false;
                break;
        }
    }
    return true;
}

template <class R>
Matrix<R> build_expression(const R& ring, int n, const std::vector<SymTerm>& terms, const Assignment& asg) {
    Matrix<R> m(ring, n, n);
    for (const auto& t : terms) {
        int i = resolve(asg, t.i);
        int j = resolve(asg, t.j);
        if (i < 1 || i > n || j < 1 || j > n)
            throw IndexOutOfRange("unit index outside [1," + std::to_string(n) + "]");
        auto c = ring.from_ratio(static_cast<long>(t.coeff.get_num().get_si()),
                                 static_cast<long>(t.coeff.get_den().get_si()));
        auto& cell = m.at(i - 1, j - 1);
        cell = ring.add(cell, c);
    }
    return m;
}

template <class R>
Vec<R> build_relation(const R& ring, int n, const std::vector<PairTerm>& terms, const Assignment& asg) {
    Vec<R> v(static_cast<std::size_t>(sym_dim(n)), ring.zero());
    for (const auto& t : terms) {
        int i = resolve(asg, t.i), j = resolve(asg, t.j);
        int k = resolve(asg, t.k), m = resolve(asg, t.m);
        if (i < 1 || i > n || j < 1 || j > n || k < 1 || k > n || m < 1 || m > n)
            throw IndexOutOfRange("unit index outside [1," + std::to_string(n) + "]");
        auto c = ring.from_ratio(static_cast<long>(t.coeff.get_num().get_si()),
                                 static_cast<long>(t.coeff.get_den().get_si()));
        auto pos = sym_pos_unordered(n, flat_index(n, i, j), flat_index(n, k, m));
        auto& cell = v[static_cast<std::size_t>(pos)];
        cell = ring.add(cell, c);
    }
    return v;
}

/// Enumerates all assignments of the step's free variables over [1, n] that
/// satisfy the constraints, in odometer order.
template <class F>
void for_each_assignment(const StepTemplate& st, int n, const Assignment& fixed, F&& fn) {
    Assignment asg = fixed;
    if (st.vars.empty()) {
        if (constraints_hold(st, n, asg)) fn(asg);
        return;
    }
    std::vector<int> odo(st.vars.size(), 1);
    while (true) {
        for (std::size_t i = 0; i < st.vars.size(); ++i) asg[st.vars[i]] = odo[i];
        if (constraints_hold(st, n, asg)) fn(asg);
        std::size_t pos = st.vars.size();
        while (pos > 0 && odo[pos - 1] == n) {
            odo[pos - 1] = 1;
            --pos;
        }
        if (pos == 0) break;
        ++odo[pos - 1];
    }
}

inline std::string format_assignment(const StepTemplate& st, const Assignment& fixed, const Assignment& asg) {
    std::string out;
    for (const auto& [sym, val] : fixed) {
        if (!out.empty()) out += ",";
        out += sym + "=" + std::to_string(val);
    }
    for (const auto& var : st.vars) {
        if (!out.empty()) out += ",";
        out += var + "=" + std::to_string(asg.at(var));
    }
    return out;
}

} // namespace replay_detail

/// Binds a template at one admissible assignment; nullopt when a constraint
/// fails. `fixed` carries the point indices (s, or p and q).
template <class R>
std::optional<ConcreteStep<R>> instantiate(const R& ring, const StepTemplate& st, int n,
                                           const Assignment& fixed, const Assignment& vars) {
    using namespace replay_detail;
    Assignment asg = fixed;
    for (const auto& [sym, val] : vars) asg[sym] = val;
    for (const auto& var : st.vars)
        if (asg.find(var) == asg.end()) throw SchemaError("assignment misses variable '" + var + "'");
    if (!constraints_hold(st, n, asg)) return std::nullopt;
    ConcreteStep<R> cs;
    cs.has_witness = st.has_witness();
    if (cs.has_witness) {
        cs.left = build_expression(ring, n, st.left, asg);
        cs.right = build_expression(ring, n, st.right, asg);
        cs.target = build_expression(ring, n, st.target, asg);
    }
    cs.relations.reserve(st.relations.size());
    for (const auto& rel : st.relations) cs.relations.push_back(build_relation(ring, n, rel, asg));
    return cs;
}

struct StepResult {
    bool identity_ok = true;
    std::vector<bool> relations_ok;
    bool all_ok() const {
        if (!identity_ok) return false;
        for (bool b : relations_ok)
            if (!b) return false;
        return true;
    }
};

/// Checks one concrete step against the current witness-difference span:
/// the witness identity exactly, then (over fields) membership of each
/// relation vector. On identity success the witness difference is inserted.
template <class R>
StepResult verify_step(const R& ring, const ConcreteStep<R>& step, SpanAccumulator<R>& state) {
    static_assert(R::is_field, "verify_step over a field; replay-only rings run identity checks only");
    StepResult res;
    const int n = step.has_witness ? step.left.rows : 0;
    if (step.has_witness) {
        res.identity_ok = equal(ring, jordan(ring, step.left, step.right), step.target);
        if (res.identity_ok) {
            auto [bx, by] = base_pair(ring, step.target);
            auto diff = sigma(ring, step.left, step.right);
            auto base = sigma(ring, bx, by);
            for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = ring.sub(diff[i], base[i]);
            if (!in_jordan_kernel(ring, n, diff))
                throw std::logic_error("witness difference escaped ker J");
            state.insert(ring, std::move(diff));
        }
    }
    res.relations_ok.reserve(step.relations.size());
    for (const auto& r : step.relations) res.relations_ok.push_back(state.contains(ring, r));
    return res;
}

struct ReplayFailure {
    std::string step_id;
    std::string assignment;
    std::string anchor;
    std::string detail;
};

struct ReplayReport {
    std::string catalog;
    int n = 0;
    Assignment point;
    RingSpec ring;
    long long instantiations_checked = 0;
    std::vector<ReplayFailure> identity_failures;
    std::vector<ReplayFailure> membership_failures;
    bool membership_checked = false;
    bool kernel_checked = false;
    bool kernel_span_ok = false;
    long relation_span_dim = -1;
    long kernel_dim = -1;
    long witness_span_dim = -1;
    long long elapsed_ms = 0;

    bool success() const {
        if (!identity_failures.empty() || !membership_failures.empty()) return false;
        return kernel_checked ? kernel_span_ok : true;
    }
};

namespace replay_detail {

inline Assignment point_assignment(const Catalog& cat, int n, const std::vector<int>& point_indices) {
    Assignment fixed;
    if (cat.point_kind == PointKind::Diag) {
        if (point_indices.size() != 1) throw PreconditionFailed("diagonal catalog needs one point index s");
        fixed["s"] = point_indices[0];
    } else {
        if (point_indices.size() != 2) throw PreconditionFailed("off-diagonal catalog needs point indices p, q");
        if (point_indices[0] == point_indices[1]) throw PreconditionFailed("off-diagonal point needs p != q");
        fixed["p"] = point_indices[0];
        fixed["q"] = point_indices[1];
    }
    for (const auto& [sym, val] : fixed)
        if (val < 1 || val > n)
            throw IndexOutOfRange("point index " + sym + "=" + std::to_string(val) + " outside [1," +
                                  std::to_string(n) + "]");
    return fixed;
}

} // namespace replay_detail

/// Replays a catalog at a concrete point: every witness identity over all
/// admissible index assignments, every relation by span membership, then the
/// closing check that the final relation families span all of K.
///
/// Witnesses of a template are all inserted before its relations are tested,
/// mirroring "the identity holds for all admissible indices" before any
/// conclusion is drawn from it. Over replay-only rings just the identity
/// phase runs.
template <class R>
ReplayReport run_catalog(const R& ring, const Catalog& cat, int n, const std::vector<int>& point_indices) {
    using namespace replay_detail;
    if (n < 3) throw PreconditionFailed("replay needs n >= 3");
    auto fixed = point_assignment(cat, n, point_indices);

    auto t0 = std::chrono::steady_clock::now();
    ReplayReport report;
    report.catalog = cat.name;
    report.n = n;
    report.point = fixed;
    report.ring = ring.spec();

    const long d = sym_dim(n);

    if constexpr (R::is_field) {
        SpanAccumulator<R> state(static_cast<int>(d));
        SpanAccumulator<R> family_span(static_cast<int>(d));
        report.membership_checked = true;

        for (const auto& st : cat.steps) {
            if (st.has_witness()) {
                for_each_assignment(st, n, fixed, [&](const Assignment& asg) {
                    ++report.instantiations_checked;
                    auto left = build_expression(ring, n, st.left, asg);
                    auto right = build_expression(ring, n, st.right, asg);
                    auto target = build_expression(ring, n, st.target, asg);
                    auto product = jordan(ring, left, right);
                    if (!equal(ring, product, target)) {
                        report.identity_failures.push_back(
                            {st.id, format_assignment(st, fixed, asg), st.anchor,
                             "left o right = " + to_string(ring, product) + ", expected " +
                                 to_string(ring, target)});
                        return;
                    }
                    auto [bx, by] = base_pair(ring, target);
                    auto diff = sigma(ring, left, right);
                    auto base = sigma(ring, bx, by);
                    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = ring.sub(diff[i], base[i]);
                    if (!in_jordan_kernel(ring, n, diff))
                        throw std::logic_error("witness difference escaped ker J");
                    state.insert(ring, std::move(diff));
                });
            }
            if (!st.relations.empty()) {
                for_each_assignment(st, n, fixed, [&](const Assignment& asg) {
                    if (!st.has_witness()) ++report.instantiations_checked;
                    for (std::size_t ri = 0; ri < st.relations.size(); ++ri) {
                        auto r = build_relation(ring, n, st.relations[ri], asg);
                        if (st.family) {
                            if (!in_jordan_kernel(ring, n, r)) {
                                report.membership_failures.push_back(
                                    {st.id, format_assignment(st, fixed, asg), st.anchor,
                                     "family relation " + std::to_string(ri + 1) + " is not in ker J"});
                                continue;
                            }
                            family_span.insert(ring, r);
                        }
                        if (!state.contains(ring, r))
                            report.membership_failures.push_back(
                                {st.id, format_assignment(st, fixed, asg), st.anchor,
                                 "relation " + std::to_string(ri + 1) + " not derivable from witnesses seen so far"});
                    }
                });
            }
        }

        report.witness_span_dim = state.rank();
        report.kernel_checked = true;
        auto kernel = kernel_of_jordan(ring, n);
        report.kernel_dim = static_cast<long>(kernel.size());
        report.relation_span_dim = family_span.rank();
        // family vectors were verified to lie in K, so dimension equality
        // pins span(families) = K
        report.kernel_span_ok = (report.relation_span_dim == report.kernel_dim);
    } else {
        for (const auto& st : cat.steps) {
            if (!st.has_witness()) continue;
            for_each_assignment(st, n, fixed, [&](const Assignment& asg) {
                ++report.instantiations_checked;
                auto left = build_expression(ring, n, st.left, asg);
                auto right = build_expression(ring, n, st.right, asg);
                auto target = build_expression(ring, n, st.target, asg);
                auto product = jordan(ring, left, right);
                if (!equal(ring, product, target))
                    report.identity_failures.push_back(
                        {st.id, format_assignment(st, fixed, asg), st.anchor,
                         "left o right = " + to_string(ring, product) + ", expected " + to_string(ring, target)});
            });
        }
    }

    report.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

/// True iff the catalog's final relation families span K = ker J at size n.
/// This is the content of the closing summation argument: every kernel
/// relation is a combination of the family relations.
template <class R>
bool verify_relation_completeness(const R& ring, const Catalog& cat, int n) {
    static_assert(R::is_field, "completeness check needs a field ring");
    using namespace replay_detail;
    if (n < 3) throw PreconditionFailed("completeness check needs n >= 3");
    Assignment fixed;
    if (cat.point_kind == PointKind::Diag)
        fixed["s"] = 1;
    else {
        fixed["p"] = 1;
        fixed["q"] = 2;
    }
    SpanAccumulator<R> span(static_cast<int>(sym_dim(n)));
    for (const auto& st : cat.steps) {
        if (!st.family) continue;
        for_each_assignment(st, n, fixed, [&](const Assignment& asg) {
            for (const auto& rel : st.relations) {
                auto r = build_relation(ring, n, rel, asg);
                if (!in_jordan_kernel(ring, n, r)) throw std::logic_error("family relation outside ker J");
                span.insert(ring, std::move(r));
            }
        });
    }
    auto kernel = kernel_of_jordan(ring, n);
    return span.rank() == static_cast<int>(kernel.size());
}

/// All witness pairs (left, right) of the catalog instantiated at a point;
/// feed for the structured decision strategy.
template <class R>
std::vector<std::pair<Matrix<R>, Matrix<R>>> structured_witnesses(const R& ring, const Catalog& cat, int n,
                                                                  const std::vector<int>& point_indices) {
    using namespace replay_detail;
    auto fixed = point_assignment(cat, n, point_indices);
    std::vector<std::pair<Matrix<R>, Matrix<R>>> out;
    for (const auto& st : cat.steps) {
        if (!st.has_witness()) continue;
        for_each_assignment(st, n, fixed, [&](const Assignment& asg) {
            out.emplace_back(build_expression(ring, n, st.left, asg), build_expression(ring, n, st.right, asg));
        });
    }
    return out;
}

} // namespace jordet
