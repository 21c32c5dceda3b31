#pragma once

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "slgamma/errors.hpp"
#include "slgamma/format.hpp"
#include "slgamma/jorgensen.hpp"
#include "slgamma/moebius.hpp"
#include "slgamma/scalar.hpp"

namespace slgamma::io {

using nlohmann::json;

/// Scalars serialize as exact "p/q" strings in rational mode and as plain
/// JSON numbers in float mode.
template <class S>
json scalar_json(const S& v) {
    if constexpr (scalar_traits<S>::exact) {
        return scalar_traits<S>::to_string(v);
    } else {
        return v;
    }
}

inline std::pair<std::size_t, std::size_t> line_column_of(const std::string& text,
                                                          std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column_of(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(e.what(), line, col);
    }
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str());
}

inline void save_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open file for writing: " + path);
    out << text;
}

/// Reads the mandatory "scalar_mode" field ("rational" or "float").
inline std::string detect_scalar_mode(const json& j) {
    if (!j.is_object()) throw ParseError("matrix file must be a JSON object", 1, 1);
    if (!j.contains("scalar_mode") || !j["scalar_mode"].is_string()) {
        throw ParseError("missing \"scalar_mode\" (\"rational\" or \"float\")", 1, 1);
    }
    const std::string mode = j["scalar_mode"].get<std::string>();
    if (mode != "rational" && mode != "float") {
        throw ParseError("scalar_mode must be \"rational\" or \"float\", got \"" +
                             mode + "\"",
                         1, 1);
    }
    return mode;
}

namespace detail {

inline std::string entry_string(const json& j, const char* name) {
    if (!j.contains(name) || !j[name].is_string()) {
        throw ParseError(std::string("missing matrix entry \"") + name +
                             "\" (interchange string)",
                         1, 1);
    }
    return j[name].get<std::string>();
}

template <class S>
std::optional<GammaElement<S>> read_factors(const json& j, const char* name) {
    if (!j.contains(name)) return std::nullopt;
    const json& arr = j[name];
    if (!arr.is_array() || arr.empty()) {
        throw ParseError(std::string("\"") + name +
                             "\" must be a non-empty array of vector strings",
                         1, 1);
    }
    std::vector<VectorElement<S>> factors;
    factors.reserve(arr.size());
    for (const json& item : arr) {
        if (!item.is_string()) {
            throw ParseError(std::string("\"") + name +
                                 "\" entries must be strings",
                             1, 1);
        }
        factors.push_back(parse_vector<S>(item.get<std::string>()));
    }
    return gamma_from_factors(std::move(factors));
}

}  // namespace detail

/// Reads one matrix record: entries "a".."d" as interchange strings plus the
/// optional "factors_a".."factors_d" evidence arrays. The caller picks S to
/// match detect_scalar_mode.
template <class S>
CliffordMatrix<S> matrix_from_json(const json& j) {
    CliffordMatrix<S> g;
    g.a = parse_clifford<S>(detail::entry_string(j, "a"));
    g.b = parse_clifford<S>(detail::entry_string(j, "b"));
    g.c = parse_clifford<S>(detail::entry_string(j, "c"));
    g.d = parse_clifford<S>(detail::entry_string(j, "d"));
    g.ev_a = detail::read_factors<S>(j, "factors_a");
    g.ev_b = detail::read_factors<S>(j, "factors_b");
    g.ev_c = detail::read_factors<S>(j, "factors_c");
    g.ev_d = detail::read_factors<S>(j, "factors_d");
    return g;
}

template <class S>
json matrix_to_json(const CliffordMatrix<S>& g) {
    json j;
    j["scalar_mode"] = scalar_traits<S>::mode_name;
    j["a"] = to_string(g.a);
    j["b"] = to_string(g.b);
    j["c"] = to_string(g.c);
    j["d"] = to_string(g.d);
    const auto put_factors = [&j](const char* name,
                                  const std::optional<GammaElement<S>>& ev) {
        if (!ev) return;
        json arr = json::array();
        for (const auto& f : ev->factors) arr.push_back(to_string(f.value()));
        j[name] = std::move(arr);
    };
    put_factors("factors_a", g.ev_a);
    put_factors("factors_b", g.ev_b);
    put_factors("factors_c", g.ev_c);
    put_factors("factors_d", g.ev_d);
    return j;
}

template <class S>
json report_to_json(const JorgensenReport<S>& rep) {
    json j;
    j["scalar_mode"] = scalar_traits<S>::mode_name;
    j["K"] = scalar_json(rep.K);
    j["w0"] = to_string(rep.w0);
    j["term_f"] = scalar_json(rep.term_f);
    j["term_comm"] = scalar_json(rep.term_comm);
    j["J"] = scalar_json(rep.J);
    j["commutator_vectorial"] = rep.commutator_vectorial;
    j["trace_f_real"] = rep.trace_f_real;
    j["trace_comm_real"] = rep.trace_comm_real;
    return j;
}

template <class S>
json certificate_to_json(const CertificateOutcome<S>& cert) {
    json j;
    j["scalar_mode"] = scalar_traits<S>::mode_name;
    j["outcome"] = cert.name();
    j["m"] = cert.m;
    j["alpha"] = scalar_json(cert.alpha);
    j["J"] = scalar_json(cert.J);
    j["K"] = scalar_json(cert.K);
    return j;
}

/// CSV trace, one row per recorded step. Exact columns stay exact strings in
/// rational mode; norm columns are always float-formatted.
template <class S>
std::string trace_to_csv(const IterationTrace<S>& trace) {
    std::string out = "m,w_re,w_norm,alpha,J_m,entry_max_norm\n";
    for (const IterationState<S>& st : trace.states) {
        out += std::to_string(st.m);
        out += ',';
        out += scalar_traits<S>::to_string(st.w_re);
        out += ',';
        out += format_double(st.w_norm);
        out += ',';
        out += scalar_traits<S>::to_string(st.alpha);
        out += ',';
        out += scalar_traits<S>::to_string(st.J_m);
        out += ',';
        out += format_double(st.entry_max_norm);
        out += '\n';
    }
    return out;
}

template <class S>
std::string scan_to_csv(const std::vector<ScanRow<S>>& rows) {
    std::string out = "r,w0,K,J,outcome,m,alpha\n";
    for (const ScanRow<S>& row : rows) {
        out += scalar_traits<S>::to_string(row.r);
        out += ',';
        out += scalar_traits<S>::to_string(row.w0);
        out += ',';
        out += scalar_traits<S>::to_string(row.K);
        out += ',';
        out += scalar_traits<S>::to_string(row.J);
        out += ',';
        out += row.outcome_name;
        out += ',';
        out += std::to_string(row.m);
        out += ',';
        out += scalar_traits<S>::to_string(row.alpha);
        out += '\n';
    }
    return out;
}

}  // namespace slgamma::io
