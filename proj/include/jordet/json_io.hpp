#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "jordet/applications.hpp"
#include "jordet/decision.hpp"
#include "jordet/matrix.hpp"
#include "jordet/replay.hpp"
#include "jordet/rings.hpp"

namespace jordet {

using ojson = nlohmann::ordered_json;

/// Scalar literal grammar: optional sign, integer, optional "/" integer.
template <class R>
typename R::Elem parse_scalar(const R& ring, const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw ParseError("empty scalar literal");
    if constexpr (std::is_same_v<R, QRing>) {
        // validate ^[+-]?digits(/digits)?$ before handing to GMP
        std::size_t pos = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        std::string digits = "+-";
        std::size_t slash = std::string::npos;
        for (std::size_t i = pos; i < t.size(); ++i) {
            if (t[i] == '/' && slash == std::string::npos && i > pos && i + 1 < t.size()) {
                slash = i;
                continue;
            }
            if (!std::isdigit(static_cast<unsigned char>(t[i])))
                throw ParseError("bad scalar literal '" + text + "'");
        }
        if (pos >= t.size()) throw ParseError("bad scalar literal '" + text + "'");
        mpz_class num(t.substr(pos, slash == std::string::npos ? t.npos : slash - pos));
        mpz_class den(slash == std::string::npos ? mpz_class(1) : mpz_class(t.substr(slash + 1)));
        if (den == 0) throw ParseError("zero denominator in '" + text + "'");
        mpq_class q(num, den);
        q.canonicalize();
        if (t[0] == '-') q = -q;
        return q;
    } else {
        bool neg = false;
        std::size_t pos = 0;
        if (t[0] == '-' || t[0] == '+') {
            neg = t[0] == '-';
            pos = 1;
        }
        long long num = 0;
        bool any = false;
        while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
            num = num * 10 + (t[pos++] - '0');
            any = true;
        }
        if (!any) throw ParseError("bad scalar literal '" + text + "'");
        long long den = 1;
        if (pos < t.size()) {
            if (t[pos] != '/') throw ParseError("bad scalar literal '" + text + "'");
            ++pos;
            den = 0;
            any = false;
            while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
                den = den * 10 + (t[pos++] - '0');
                any = true;
            }
            if (!any || pos != t.size()) throw ParseError("bad scalar literal '" + text + "'");
        }
        return ring.from_ratio(static_cast<long>(neg ? -num : num), static_cast<long>(den));
    }
}

/// Point grammar: "e:i,j" (matrix unit) or "m:{i,j=coeff;...}" (sparse).
template <class R>
Matrix<R> parse_point(const R& ring, int n, const std::string& spec) {
    if (spec.rfind("e:", 0) == 0) {
        auto comma = spec.find(',', 2);
        if (comma == std::string::npos) throw ParseError("point '" + spec + "': expected e:i,j");
        int i = 0, j = 0;
        try {
            i = std::stoi(spec.substr(2, comma - 2));
            j = std::stoi(spec.substr(comma + 1));
        } catch (...) {
            throw ParseError("point '" + spec + "': bad indices");
        }
        return unit(ring, n, i, j);
    }
    if (spec.rfind("m:{", 0) == 0 && spec.back() == '}') {
        Matrix<R> m(ring, n, n);
        std::string body = spec.substr(3, spec.size() - 4);
        if (body.empty()) return m;
        std::size_t pos = 0;
        while (pos <= body.size()) {
            auto semi = body.find(';', pos);
            auto entry = body.substr(pos, semi == std::string::npos ? body.npos : semi - pos);
            auto comma = entry.find(',');
            auto eq = entry.find('=');
            if (comma == std::string::npos || eq == std::string::npos || comma > eq)
                throw ParseError("point entry '" + entry + "': expected i,j=coeff");
            int i = 0, j = 0;
            try {
                i = std::stoi(entry.substr(0, comma));
                j = std::stoi(entry.substr(comma + 1, eq - comma - 1));
            } catch (...) {
                throw ParseError("point entry '" + entry + "': bad indices");
            }
            if (i < 1 || i > n || j < 1 || j > n)
                throw IndexOutOfRange("point entry index outside [1," + std::to_string(n) + "]");
            m.at(i - 1, j - 1) = parse_scalar(ring, entry.substr(eq + 1));
            if (semi == std::string::npos) break;
            pos = semi + 1;
        }
        return m;
    }
    throw ParseError("point '" + spec + "': expected e:i,j or m:{i,j=coeff;...}");
}

template <class R>
ojson matrix_json(const R& ring, const Matrix<R>& m) {
    ojson out = ojson::array();
    for (int i = 0; i < m.rows; ++i) {
        ojson row = ojson::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(ring.str(m.at(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

template <class R>
ojson vector_json(const R& ring, const Vec<R>& v) {
    ojson out = ojson::array();
    for (const auto& x : v) out.push_back(ring.str(x));
    return out;
}

/// LinMap exchange format: {"n": N, "ring": "...", "entries": N^2 x N^2
/// array of scalar literals}.
template <class R>
ojson linmap_json(const R& ring, const LinMap<R>& f) {
    ojson out;
    out["n"] = f.n;
    out["ring"] = ring.spec().name();
    out["entries"] = matrix_json(ring, f.mat);
    return out;
}

template <class R>
LinMap<R> linmap_from_json(const R& ring, const ojson& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("ring") || !j.contains("entries"))
        throw ParseError("map file: expected object with n, ring, entries");
    int n = j.at("n").get<int>();
    if (n < 1) throw ParseError("map file: bad n");
    if (j.at("ring").get<std::string>() != ring.spec().name())
        throw ParseError("map file ring '" + j.at("ring").get<std::string>() + "' does not match active ring '" +
                         ring.spec().name() + "'");
    const auto& rows = j.at("entries");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n * n)
        throw ParseError("map file: entries must be an n^2 x n^2 array");
    LinMap<R> f{n, Matrix<R>(ring, n * n, n * n)};
    for (int r = 0; r < n * n; ++r) {
        const auto& row = rows.at(static_cast<std::size_t>(r));
        if (!row.is_array() || static_cast<int>(row.size()) != n * n)
            throw ParseError("map file: entries must be an n^2 x n^2 array");
        for (int c = 0; c < n * n; ++c)
            f.mat.at(r, c) = parse_scalar(ring, row.at(static_cast<std::size_t>(c)).get<std::string>());
    }
    return f;
}

template <class R>
LinMap<R> linmap_from_file(const R& ring, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open map file '" + path + "'");
    ojson j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("map file '" + path + "': " + e.what());
    }
    return linmap_from_json(ring, j);
}

template <class R>
ojson decision_result_json(const R& ring, const DecisionReport<R>& rep) {
    ojson out;
    out["verdict"] = verdict_name(rep.verdict);
    out["ring"] = rep.ring.name();
    out["dim_sym2"] = rep.dim_sym2;
    out["dim_kernel"] = rep.dim_kernel;
    out["dim_span"] = rep.dim_span;
    out["samples_used"] = rep.samples_used;
    if (rep.certificate) {
        ojson cert;
        cert["functional"] = vector_json(ring, rep.certificate->functional);
        cert["witness_kernel_vector"] = vector_json(ring, rep.certificate->witness_kernel_vector);
        out["certificate"] = std::move(cert);
    } else {
        out["certificate"] = nullptr;
    }
    return out;
}

inline ojson replay_result_json(const ReplayReport& rep) {
    ojson out;
    out["catalog"] = rep.catalog;
    out["n"] = rep.n;
    ojson pt;
    for (const auto& [sym, val] : rep.point) pt[sym] = val;
    out["point"] = std::move(pt);
    out["ring"] = rep.ring.name();
    out["instantiations_checked"] = rep.instantiations_checked;
    auto failures = [](const std::vector<ReplayFailure>& fs) {
        ojson arr = ojson::array();
        for (const auto& f : fs) {
            ojson o;
            o["step"] = f.step_id;
            o["assignment"] = f.assignment;
            o["anchor"] = f.anchor;
            o["detail"] = f.detail;
            arr.push_back(std::move(o));
        }
        return arr;
    };
    out["identity_failures"] = failures(rep.identity_failures);
    out["membership_failures"] = failures(rep.membership_failures);
    out["membership_checked"] = rep.membership_checked;
    if (rep.kernel_checked) {
        out["kernel_span_ok"] = rep.kernel_span_ok;
        out["relation_span_dim"] = rep.relation_span_dim;
        out["kernel_dim"] = rep.kernel_dim;
        out["witness_span_dim"] = rep.witness_span_dim;
    } else {
        out["kernel_span_ok"] = nullptr;
        out["relation_span_dim"] = nullptr;
        out["kernel_dim"] = nullptr;
        out["witness_span_dim"] = nullptr;
        out["kernel_phase"] = "skipped (replay-only ring)";
    }
    out["success"] = rep.success();
    return out;
}

template <class R>
ojson derivable_result_json(const R& ring, const DerivableSpaceReport<R>& rep) {
    ojson out;
    out["constraint_rank"] = rep.constraint_rank;
    out["solution_dim"] = rep.solution_dim;
    out["all_solutions_are_jordan_derivations"] = rep.all_solutions_are_jordan_derivations;
    out["pairs_used"] = rep.pairs_used;
    ojson basis = ojson::array();
    for (const auto& f : rep.basis) basis.push_back(matrix_json(ring, f.mat));
    out["basis"] = std::move(basis);
    return out;
}

template <class R>
ojson mult_result_json(const R& ring, const MultReport<R>& rep) {
    ojson out;
    out["outcome"] = mult_outcome_name(rep.outcome);
    out["hypothesis_exhaustive"] = rep.hypothesis_exhaustive;
    out["paper_contradiction"] = rep.paper_contradiction;
    out["pairs_checked"] = rep.pairs_checked;
    if (rep.failing_pair) {
        ojson pair;
        pair["s"] = matrix_json(ring, rep.failing_pair->first);
        pair["t"] = matrix_json(ring, rep.failing_pair->second);
        out["failing_pair"] = std::move(pair);
    } else {
        out["failing_pair"] = nullptr;
    }
    return out;
}

} // namespace jordet
