#pragma once

#include <algorithm>
#include <cctype>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "idealtri/combinatorics.hpp"
#include "idealtri/errors.hpp"
#include "idealtri/triangulation.hpp"

namespace idealtri {

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream is{std::string(s)};
    std::string tok;
    while (is >> tok)
        out.push_back(tok);
    return out;
}

inline bool parse_int(const std::string& tok, int& value) {
    if (tok.empty() || tok.size() > 9)
        return false;
    for (char c : tok)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    value = std::stoi(tok);
    return true;
}

}  // namespace detail

/// Reads the "tri v1" text format:
///
///   tri v1
///   tetrahedra <n>
///   glue <t1> <f1> <t2> <f2> <p0p1p2p3>
///
/// Blank lines and lines starting with '#' are ignored. The result is
/// validated; structural problems raise InvalidTriangulation.
inline Triangulation parse_triangulation(std::string_view text) {
    Triangulation t;
    bool have_header = false;
    bool have_count = false;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string_view raw = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        const std::string_view line = detail::trim(raw);
        if (line.empty() || line.front() == '#')
            continue;
        const auto tok = detail::split_ws(line);
        if (!have_header) {
            if (tok.size() != 2 || tok[0] != "tri")
                throw SyntaxError(line_no, "expected header 'tri v1'");
            if (tok[1] != "v1")
                throw SyntaxError(line_no, "unsupported format version '" + tok[1] + "'");
            have_header = true;
            continue;
        }
        if (tok[0] == "tetrahedra") {
            if (have_count)
                throw SyntaxError(line_no, "duplicate 'tetrahedra' line");
            if (tok.size() != 2 || !detail::parse_int(tok[1], t.tetra_count))
                throw SyntaxError(line_no, "expected 'tetrahedra <n>' with a non-negative integer");
            have_count = true;
            continue;
        }
        if (tok[0] == "glue") {
            if (!have_count)
                throw SyntaxError(line_no, "'glue' before 'tetrahedra'");
            if (tok.size() != 6)
                throw SyntaxError(line_no, "expected 'glue <t1> <f1> <t2> <f2> <perm>'");
            FaceGluing g;
            if (!detail::parse_int(tok[1], g.source.tet) || !detail::parse_int(tok[2], g.source.face) ||
                !detail::parse_int(tok[3], g.target.tet) || !detail::parse_int(tok[4], g.target.face))
                throw SyntaxError(line_no, "indices must be non-negative integers");
            const auto p = VertexPermutation::parse(tok[5]);
            if (!p)
                throw SyntaxError(line_no, "'" + tok[5] + "' is not a permutation of 0123");
            g.perm = *p;
            t.gluings.push_back(g);
            continue;
        }
        throw SyntaxError(line_no, "unknown line '" + std::string(line) + "'");
    }
    line_no = std::max(line_no, 1);
    if (!have_header)
        throw SyntaxError(line_no, "missing header 'tri v1'");
    if (!have_count)
        throw SyntaxError(line_no, "missing 'tetrahedra <n>' line");
    require_valid(t);
    return t;
}

/// Canonical text: each face pair once from its smaller side, sorted by
/// source face. parse_triangulation(print_triangulation(t)) has the same
/// canonical form as t.
inline std::string print_triangulation(const Triangulation& t) {
    const Triangulation c = canonical_form(t);
    std::ostringstream os;
    os << "tri v1\n";
    os << "tetrahedra " << c.tetra_count << '\n';
    for (const auto& g : c.gluings)
        os << "glue " << g.source.tet << ' ' << g.source.face << ' ' << g.target.tet << ' ' << g.target.face << ' '
           << g.perm.to_string() << '\n';
    return os.str();
}

/// Reads "a+bi", "a-bi", "a", "bi", "i", "-i" (no spaces needed, exponents
/// allowed). Throws Error on anything else.
inline std::complex<double> parse_complex(std::string_view text) {
    const std::string s(detail::trim(text));
    if (s.empty())
        throw Error("empty complex number");
    double re = 0.0, im = 0.0;
    bool have_re = false, have_im = false;
    std::size_t pos = 0;
    while (pos < s.size()) {
        double sign = 1.0;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1.0 : 1.0;
            ++pos;
        } else if (pos != 0) {
            throw Error("malformed complex number '" + s + "'");
        }
        double coef = 1.0;
        bool number = false;
        if (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.')) {
            char* end = nullptr;
            coef = std::strtod(s.c_str() + pos, &end);
            pos = static_cast<std::size_t>(end - s.c_str());
            number = true;
        }
        const bool imag = pos < s.size() && s[pos] == 'i';
        if (imag)
            ++pos;
        if (!number && !imag)
            throw Error("malformed complex number '" + s + "'");
        if (imag) {
            if (have_im)
                throw Error("malformed complex number '" + s + "'");
            im = sign * coef;
            have_im = true;
        } else {
            if (have_re || have_im)
                throw Error("malformed complex number '" + s + "'");
            re = sign * coef;
            have_re = true;
        }
    }
    return {re, im};
}

/// Comma-separated list of complex numbers.
inline std::vector<std::complex<double>> parse_complex_list(std::string_view text) {
    std::vector<std::complex<double>> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        out.push_back(parse_complex(text.substr(pos, comma == text.npos ? text.npos : comma - pos)));
        if (comma == text.npos)
            break;
        pos = comma + 1;
    }
    return out;
}

/// Angle in radians: a plain number, or a multiple of pi such as "pi",
/// "-pi/2", "2pi/3", "0.5pi".
inline double parse_angle(std::string_view text) {
    const std::string s(detail::trim(text));
    const std::size_t at = s.find("pi");
    if (at == std::string::npos) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw Error("malformed angle '" + s + "'");
        }
        if (used != s.size())
            throw Error("malformed angle '" + s + "'");
        return v;
    }
    double coef = 1.0;
    const std::string head = s.substr(0, at);
    if (head == "-")
        coef = -1.0;
    else if (!head.empty() && head != "+")
        coef = parse_angle(head);
    double denom = 1.0;
    const std::string tail = s.substr(at + 2);
    if (!tail.empty()) {
        if (tail.front() != '/')
            throw Error("malformed angle '" + s + "'");
        denom = parse_angle(tail.substr(1));
    }
    return coef * std::numbers::pi / denom;
}

inline std::vector<double> parse_angle_list(std::string_view text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        out.push_back(parse_angle(text.substr(pos, comma == text.npos ? text.npos : comma - pos)));
        if (comma == text.npos)
            break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace idealtri
