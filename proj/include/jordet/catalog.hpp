#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "jordet/errors.hpp"

namespace jordet {

/// A coefficient times a symbolic matrix unit e[i,j]. Index symbols are the
/// fixed point indices (s, or p and q) or free variables of the step.
struct SymTerm {
    mpq_class coeff;
    std::string i, j;
};

/// A coefficient times an unordered unit-pair symbol <e[i,j],e[k,m]>.
struct PairTerm {
    mpq_class coeff;
    std::string i, j, k, m;
};

struct Constraint {
    enum class Kind { Neq, Distinct, NGreater3, NEquals3 };
    Kind kind = Kind::Neq;
    std::vector<std::string> syms;
};

/// One template of the proof transcription: an optional witness identity
/// (left o right = target) plus relation vectors asserted to lie in the span
/// of the witness differences accumulated so far.
struct StepTemplate {
    std::string id;
    std::string anchor;
    std::string comment;
    bool family = false;
    std::vector<Constraint> constraints;
    std::vector<SymTerm> left, right, target;
    std::vector<std::vector<PairTerm>> relations;
    std::vector<std::string> vars; // free index variables, in order of first appearance

    bool has_witness() const { return !left.empty(); }
};

enum class PointKind { Diag, OffDiag };

struct Catalog {
    std::string name;
    PointKind point_kind = PointKind::Diag;
    std::vector<StepTemplate> steps;

    std::vector<std::string> fixed_symbols() const {
        if (point_kind == PointKind::Diag) return {"s"};
        return {"p", "q"};
    }
};

namespace catalog_detail {

inline std::string trim(std::string_view sv) {
    std::size_t b = 0, e = sv.size();
    while (b < e && std::isspace(static_cast<unsigned char>(sv[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(sv[e - 1]))) --e;
    return std::string(sv.substr(b, e - b));
}

/// Character scanner over one catalog line.
class LineScan {
  public:
    LineScan(std::string text, int line_no) : text_(std::move(text)), line_(line_no) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("line " + std::to_string(line_) + ": " + what + " near '" +
                         text_.substr(std::min(pos_, text_.size())) + "'");
    }

    std::string symbol() {
        skip_ws();
        std::string out;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
            out += text_[pos_++];
        if (out.empty()) fail("expected index symbol");
        return out;
    }

    long integer() {
        skip_ws();
        bool neg = accept('-');
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected integer");
        long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            v = v * 10 + (text_[pos_++] - '0');
        return neg ? -v : v;
    }

    /// coeff := INT [ '/' INT ]; the leading sign comes from the caller.
    mpq_class coefficient() {
        long num = integer();
        long den = 1;
        if (accept('/')) den = integer();
        if (den == 0) fail("zero denominator");
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }

    bool starts_digit() {
        skip_ws();
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    /// e[i,j]
    std::pair<std::string, std::string> unit_ref() {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != 'e') fail("expected unit e[..]");
        ++pos_;
        expect('[');
        auto i = symbol();
        expect(',');
        auto j = symbol();
        expect(']');
        return {i, j};
    }

    int line() const { return line_; }

  private:
    std::string text_;
    std::size_t pos_ = 0;
    int line_;
};

inline std::vector<SymTerm> parse_expression(const std::string& text, int line_no) {
    LineScan sc(text, line_no);
    std::vector<SymTerm> terms;
    bool neg = sc.accept('-');
    while (true) {
        SymTerm t;
        t.coeff = sc.starts_digit() ? sc.coefficient() : mpq_class(1);
        if (neg) t.coeff = -t.coeff;
        auto [i, j] = sc.unit_ref();
        t.i = i;
        t.j = j;
        terms.push_back(std::move(t));
        if (sc.at_end()) break;
        if (sc.accept('+'))
            neg = false;
        else if (sc.accept('-'))
            neg = true;
        else
            sc.fail("expected '+' or '-'");
    }
    return terms;
}

inline std::vector<PairTerm> parse_relation(const std::string& text, int line_no) {
    LineScan sc(text, line_no);
    std::vector<PairTerm> terms;
    bool neg = sc.accept('-');
    while (true) {
        PairTerm t;
        t.coeff = sc.starts_digit() ? sc.coefficient() : mpq_class(1);
        if (neg) t.coeff = -t.coeff;
        sc.expect('<');
        auto [i, j] = sc.unit_ref();
        sc.expect(',');
        auto [k, m] = sc.unit_ref();
        sc.expect('>');
        t.i = i;
        t.j = j;
        t.k = k;
        t.m = m;
        terms.push_back(std::move(t));
        if (sc.at_end()) break;
        if (sc.accept('+'))
            neg = false;
        else if (sc.accept('-'))
            neg = true;
        else
            sc.fail("expected '+' or '-'");
    }
    return terms;
}

inline std::vector<Constraint> parse_requires(const std::string& text, int line_no) {
    std::vector<Constraint> out;
    std::size_t start = 0;
    auto next_atom = [&]() -> std::string {
        // split on commas that are not inside distinct(...) parentheses
        int depth = 0;
        for (std::size_t i = start; i < text.size(); ++i) {
            if (text[i] == '(') ++depth;
            if (text[i] == ')') --depth;
            if (text[i] == ',' && depth == 0) {
                auto atom = trim(std::string_view(text).substr(start, i - start));
                start = i + 1;
                return atom;
            }
        }
        auto atom = trim(std::string_view(text).substr(start));
        start = text.size() + 1;
        return atom;
    };
    while (start <= text.size()) {
        auto atom = next_atom();
        if (atom.empty()) {
            if (start > text.size()) break;
            throw ParseError("line " + std::to_string(line_no) + ": empty constraint atom");
        }
        Constraint c;
        if (atom == "n>3") {
            c.kind = Constraint::Kind::NGreater3;
        } else if (atom == "n=3") {
            c.kind = Constraint::Kind::NEquals3;
        } else if (atom.rfind("distinct(", 0) == 0 && atom.back() == ')') {
            c.kind = Constraint::Kind::Distinct;
            std::string inner = atom.substr(9, atom.size() - 10);
            std::size_t p = 0;
            while (p <= inner.size()) {
                auto comma = inner.find(',', p);
                auto sym = trim(std::string_view(inner).substr(p, comma == std::string::npos ? inner.npos : comma - p));
                if (sym.empty()) throw ParseError("line " + std::to_string(line_no) + ": bad distinct() list");
                c.syms.push_back(sym);
                if (comma == std::string::npos) break;
                p = comma + 1;
            }
            if (c.syms.size() < 2)
                throw ParseError("line " + std::to_string(line_no) + ": distinct() needs two or more symbols");
        } else {
            auto op = atom.find("!=");
            if (op == std::string::npos)
                throw SchemaError("line " + std::to_string(line_no) + ": unknown constraint atom '" + atom + "'");
            auto lhs = trim(std::string_view(atom).substr(0, op));
            auto rhs = trim(std::string_view(atom).substr(op + 2));
            if (lhs.empty() || rhs.empty())
                throw ParseError("line " + std::to_string(line_no) + ": malformed constraint '" + atom + "'");
            c.kind = Constraint::Kind::Neq;
            c.syms = {lhs, rhs};
        }
        out.push_back(std::move(c));
        if (start > text.size()) break;
    }
    return out;
}

inline void collect_vars(StepTemplate& step, const std::vector<std::string>& fixed) {
    auto is_fixed = [&](const std::string& s) {
        return std::find(fixed.begin(), fixed.end(), s) != fixed.end();
    };
    auto note = [&](const std::string& s) {
        if (is_fixed(s)) return;
        if (std::find(step.vars.begin(), step.vars.end(), s) == step.vars.end()) step.vars.push_back(s);
    };
    for (const auto* exprs : {&step.left, &step.right, &step.target})
        for (const auto& t : *exprs) {
            note(t.i);
            note(t.j);
        }
    for (const auto& rel : step.relations)
        for (const auto& t : rel) {
            note(t.i);
            note(t.j);
            note(t.k);
            note(t.m);
        }
}

} // namespace catalog_detail

/// Parses a replay catalog document. Throws ParseError / SchemaError with
/// line information on malformed input.
inline Catalog parse_catalog(std::string_view text) {
    using namespace catalog_detail;
    Catalog cat;
    bool saw_catalog = false, saw_point = false;
    StepTemplate* cur = nullptr;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        auto raw = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        auto line = trim(raw);
        if (line.empty() || line[0] == '#') continue;

        auto sp = line.find(' ');
        std::string key = sp == std::string::npos ? line : line.substr(0, sp);
        std::string rest = sp == std::string::npos ? std::string() : trim(std::string_view(line).substr(sp + 1));

        if (key == "catalog") {
            if (rest.empty()) throw ParseError("line " + std::to_string(line_no) + ": catalog needs a name");
            cat.name = rest;
            saw_catalog = true;
        } else if (key == "point") {
            if (rest == "diag")
                cat.point_kind = PointKind::Diag;
            else if (rest == "offdiag")
                cat.point_kind = PointKind::OffDiag;
            else
                throw SchemaError("line " + std::to_string(line_no) + ": point kind must be diag or offdiag");
            saw_point = true;
        } else if (key == "step" || key == "family") {
            if (rest.empty()) throw ParseError("line " + std::to_string(line_no) + ": step needs an id");
            for (const auto& s : cat.steps)
                if (s.id == rest) throw SchemaError("line " + std::to_string(line_no) + ": duplicate step id " + rest);
            StepTemplate st;
            st.id = rest;
            st.family = (key == "family");
            cat.steps.push_back(std::move(st));
            cur = &cat.steps.back();
        } else if (key == "anchor" || key == "comment" || key == "requires" || key == "left" ||
                   key == "right" || key == "target" || key == "rel") {
            if (!cur) throw ParseError("line " + std::to_string(line_no) + ": '" + key + "' outside of a step");
            if (key == "anchor")
                cur->anchor = rest;
            else if (key == "comment")
                cur->comment = rest;
            else if (key == "requires")
                cur->constraints = parse_requires(rest, line_no);
            else if (key == "left")
                cur->left = parse_expression(rest, line_no);
            else if (key == "right")
                cur->right = parse_expression(rest, line_no);
            else if (key == "target")
                cur->target = parse_expression(rest, line_no);
            else
                cur->relations.push_back(parse_relation(rest, line_no));
        } else {
            throw SchemaError("line " + std::to_string(line_no) + ": unknown keyword '" + key + "'");
        }
    }

    if (!saw_catalog) throw SchemaError("missing catalog header");
    if (!saw_point) throw SchemaError("missing point header");
    if (cat.steps.empty()) throw SchemaError("catalog has no steps");

    auto fixed = cat.fixed_symbols();
    for (auto& st : cat.steps) {
        if (st.family && st.has_witness())
            throw SchemaError("family " + st.id + " must not carry a witness identity");
        if (st.has_witness() && (st.right.empty() || st.target.empty()))
            throw SchemaError("step " + st.id + " has an incomplete witness identity");
        if (!st.has_witness() && st.relations.empty())
            throw SchemaError("step " + st.id + " has neither witness nor relations");
        collect_vars(st, fixed);
        for (const auto& c : st.constraints) {
            for (const auto& sym : c.syms) {
                bool known = std::find(st.vars.begin(), st.vars.end(), sym) != st.vars.end() ||
                             std::find(fixed.begin(), fixed.end(), sym) != fixed.end();
                if (!known)
                    throw SchemaError("step " + st.id + ": constraint symbol '" + sym +
                                      "' does not occur in the step");
            }
        }
    }
    return cat;
}

} // namespace jordet
