#ifndef RESBOUND_IO_HPP
#define RESBOUND_IO_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "interval_union.hpp"
#include "polynomial.hpp"

namespace resbound {

using json = nlohmann::ordered_json;

// {"intervals": [[a1,a2],[a3,a4],...]}
inline json to_json(const IntervalUnion& s) {
    json iv = json::array();
    for (const auto& i : s.intervals()) iv.push_back(json::array({i.lo, i.hi}));
    return json{{"intervals", iv}};
}

inline IntervalUnion interval_union_from_json(const json& j) {
    if (!j.is_object() || !j.contains("intervals") || !j["intervals"].is_array()) {
        throw InvalidInput("interval union JSON needs an \"intervals\" array");
    }
    std::vector<double> raw;
    for (const auto& iv : j["intervals"]) {
        if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number()) {
            throw InvalidInput("each interval must be a pair of numbers");
        }
        raw.push_back(iv[0].get<double>());
        raw.push_back(iv[1].get<double>());
    }
    return make_interval_union(raw);
}

// {"basis":"monomial"|"chebyshev","interval":[lo,hi]?,"coeffs":[c0,...,cn]}
inline json to_json(const RealPolynomial& p) {
    json j;
    if (p.basis() == Basis::monomial) {
        j["basis"] = "monomial";
    } else {
        j["basis"] = "chebyshev";
        j["interval"] = json::array({p.lo(), p.hi()});
    }
    j["coeffs"] = std::vector<double>(p.coeffs().begin(), p.coeffs().end());
    return j;
}

inline RealPolynomial polynomial_from_json(const json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].empty()) {
        throw InvalidInput("polynomial JSON needs a nonempty \"coeffs\" array");
    }
    std::vector<double> c;
    for (const auto& v : j["coeffs"]) {
        if (!v.is_number()) throw InvalidInput("polynomial coefficients must be numbers");
        c.push_back(v.get<double>());
    }
    const std::string basis = j.value("basis", "monomial");
    if (basis == "monomial") return RealPolynomial::monomial(std::move(c));
    if (basis == "chebyshev") {
        if (!j.contains("interval") || !j["interval"].is_array() || j["interval"].size() != 2) {
            throw InvalidInput("Chebyshev polynomial JSON needs an \"interval\" pair");
        }
        return RealPolynomial::chebyshev(std::move(c), j["interval"][0].get<double>(), j["interval"][1].get<double>());
    }
    throw InvalidInput("unknown polynomial basis \"" + basis + "\"");
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
}

/// "a1,a2;a3,a4" or "@file.json" -> IntervalUnion.
inline IntervalUnion parse_set(const std::string& spec) {
    if (spec.empty()) throw InvalidInput("empty set specification");
    if (spec.front() == '@') return interval_union_from_json(parse_json_text(read_file(spec.substr(1))));
    if (spec.front() == '{') return interval_union_from_json(parse_json_text(spec));
    std::vector<double> raw;
    std::stringstream intervals(spec);
    std::string pair;
    while (std::getline(intervals, pair, ';')) {
        std::stringstream ends(pair);
        std::string token;
        int count = 0;
        while (std::getline(ends, token, ',')) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(token, &used);
            } catch (const std::exception&) {
                throw InvalidInput("malformed endpoint \"" + token + "\"");
            }
            while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
            if (used != token.size()) throw InvalidInput("malformed endpoint \"" + token + "\"");
            raw.push_back(v);
            ++count;
        }
        if (count != 2) throw InvalidInput("each interval needs exactly two endpoints: \"" + pair + "\"");
    }
    return make_interval_union(raw);
}

/// Polynomial given inline as JSON or as @file.json.
inline RealPolynomial parse_polynomial(const std::string& spec) {
    if (spec.empty()) throw InvalidInput("empty polynomial specification");
    if (spec.front() == '@') return polynomial_from_json(parse_json_text(read_file(spec.substr(1))));
    return polynomial_from_json(parse_json_text(spec));
}

inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline void dump(const json& j, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close(static_cast<std::size_t>(indent * depth), ' ');
    const char* nl = indent > 0 ? "\n" : "";
    switch (j.type()) {
        case json::value_t::number_float:
            out += format_real(j.get<double>());
            break;
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                break;
            }
            out += "{";
            out += nl;
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) {
                    out += ",";
                    out += nl;
                }
                first = false;
                out += pad + json(it.key()).dump() + (indent > 0 ? ": " : ":");
                dump(it.value(), out, indent, depth + 1);
            }
            out += nl + close + "}";
            break;
        }
        case json::value_t::array: {
            bool scalar = true;
            for (const auto& v : j) scalar = scalar && !v.is_structured();
            if (j.empty() || scalar) {
                out += "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) out += ",";
                    dump(j[i], out, indent, depth + 1);
                }
                out += "]";
                break;
            }
            out += "[";
            out += nl;
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) {
                    out += ",";
                    out += nl;
                }
                out += pad;
                dump(j[i], out, indent, depth + 1);
            }
            out += nl + close + "]";
            break;
        }
        default:
            out += j.dump();
    }
}

}

/// JSON text with every real rendered with 17 significant digits.
inline std::string dump17(const json& j, int indent = 2) {
    std::string out;
    detail::dump(j, out, indent, 0);
    return out;
}

}

#endif
