#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pdmom/concomitant.hpp"
#include "pdmom/corpus.hpp"
#include "pdmom/errors.hpp"
#include "pdmom/moments.hpp"
#include "pdmom/operator.hpp"
#include "pdmom/rational.hpp"

// Text formats. Scalars are "p/q", integer, or decimal literals (decimals
// parse exactly). '#' starts a comment; blank lines are ignored.
//
//   operator:   one line per coefficient, ascending j:   p_j: c_0 c_1 ... c_{d_j}
//   jumps:      one line per node:                       xi: D0 D1 ... D{n-1}
//   moments:    one scalar per line, index ascending
//   piecewise:  header "breakpoints: xi_0 ... xi_{p+1}", then per interval
//               either "poly: c_0 c_1 ..." or "ic: v_0 ... v_{n-1}"

namespace pdmom {

namespace detail {

inline std::vector<std::string> content_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

inline std::vector<Rat> parse_scalar_list(const std::string& text) {
    std::istringstream ss(text);
    std::vector<Rat> values;
    std::string token;
    while (ss >> token) values.push_back(parse_rat(token));
    return values;
}

/// Splits "tag: payload"; returns false when there is no colon.
inline bool split_tagged(const std::string& line, std::string& tag, std::string& payload) {
    auto colon = line.find(':');
    if (colon == std::string::npos) return false;
    tag = line.substr(0, colon);
    if (auto begin = tag.find_first_not_of(" \t"); begin != std::string::npos)
        tag = tag.substr(begin, tag.find_last_not_of(" \t") - begin + 1);
    else
        tag.clear();
    payload = line.substr(colon + 1);
    return true;
}

}  // namespace detail

inline DiffOperator<Rat> read_operator(std::istream& in) {
    std::vector<Polynomial<Rat>> coeffs;
    for (const std::string& line : detail::content_lines(in)) {
        std::string tag, payload;
        if (!detail::split_tagged(line, tag, payload))
            throw ParseError("operator: expected 'p_j: coefficients', got '" + line + "'");
        const std::string expected = "p_" + std::to_string(coeffs.size());
        if (tag != expected)
            throw ParseError("operator: expected '" + expected + ":', got '" + tag + ":'");
        coeffs.emplace_back(detail::parse_scalar_list(payload));
    }
    if (coeffs.size() < 2) throw ParseError("operator: need lines p_0 .. p_n with n >= 1");
    if (coeffs.back().is_zero()) throw ParseError("operator: leading coefficient p_n must be nonzero");
    return DiffOperator<Rat>(std::move(coeffs));
}

inline void write_operator(std::ostream& out, const DiffOperator<Rat>& op) {
    for (int j = 0; j <= op.order(); ++j) {
        out << "p_" << j << ":";
        for (const Rat& c : op.coeff(j).coefficients()) out << " " << to_string(c);
        out << "\n";
    }
}

inline JumpData<Rat> read_jumps(std::istream& in) {
    JumpData<Rat> jumps;
    for (const std::string& line : detail::content_lines(in)) {
        std::string tag, payload;
        if (!detail::split_tagged(line, tag, payload))
            throw ParseError("jumps: expected 'xi: D0 D1 ...', got '" + line + "'");
        jumps.nodes.push_back(parse_rat(tag));
        jumps.jumps.push_back(detail::parse_scalar_list(payload));
        if (jumps.jumps.back().empty()) throw ParseError("jumps: node without jump values");
    }
    jumps.validate();
    return jumps;
}

template <class Scalar>
void write_jumps(std::ostream& out, const JumpData<Scalar>& jumps) {
    for (size_t j = 0; j < jumps.nodes.size(); ++j) {
        out << scalar_text(jumps.nodes[j]) << ":";
        for (const Scalar& d : jumps.jumps[j]) out << " " << scalar_text(d);
        out << "\n";
    }
}

inline MomentSequence<Rat> read_moments(std::istream& in) {
    std::vector<Rat> values;
    for (const std::string& line : detail::content_lines(in)) {
        std::vector<Rat> row = detail::parse_scalar_list(line);
        if (row.size() != 1) throw ParseError("moments: one scalar per line, got '" + line + "'");
        values.push_back(row.front());
    }
    return MomentSequence<Rat>(std::move(values));
}

template <class Scalar>
void write_moments(std::ostream& out, const MomentSequence<Scalar>& m) {
    for (const Scalar& v : m.values()) out << scalar_text(v) << "\n";
}

inline PiecewiseSpec<Rat> read_piecewise(std::istream& in) {
    PiecewiseSpec<Rat> spec;
    bool have_breakpoints = false;
    for (const std::string& line : detail::content_lines(in)) {
        std::string tag, payload;
        if (!detail::split_tagged(line, tag, payload))
            throw ParseError("piecewise: expected 'tag: values', got '" + line + "'");
        if (!have_breakpoints) {
            if (tag != "breakpoints") throw ParseError("piecewise: first line must be 'breakpoints: ...'");
            spec.breakpoints = detail::parse_scalar_list(payload);
            have_breakpoints = true;
        } else if (tag == "poly") {
            spec.pieces.push_back(PiecewiseSpec<Rat>::Piece::from_poly(
                Polynomial<Rat>(detail::parse_scalar_list(payload))));
        } else if (tag == "ic") {
            spec.pieces.push_back(PiecewiseSpec<Rat>::Piece::from_ic(detail::parse_scalar_list(payload)));
        } else {
            throw ParseError("piecewise: unknown piece tag '" + tag + "'");
        }
    }
    spec.validate();
    return spec;
}

inline void write_piecewise(std::ostream& out, const PiecewiseSpec<Rat>& spec) {
    out << "breakpoints:";
    for (const Rat& b : spec.breakpoints) out << " " << to_string(b);
    out << "\n";
    for (const auto& piece : spec.pieces) {
        if (piece.kind == PiecewiseSpec<Rat>::Piece::Kind::polynomial) {
            out << "poly:";
            for (const Rat& c : piece.poly.coefficients()) out << " " << to_string(c);
        } else {
            out << "ic:";
            for (const Rat& v : piece.ic) out << " " << to_string(v);
        }
        out << "\n";
    }
}

}  // namespace pdmom
