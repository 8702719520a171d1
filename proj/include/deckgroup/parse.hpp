#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "serialize.hpp"
#include "sphere.hpp"

namespace deckgroup {

// Complex literals on the command line: "re+imi" pairs ("1", "-2.5", "i",
// "-i", "3i", "1+2i", "1.5-0.5i") or JSON arrays "[re, im]".
inline cplx parse_complex(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty complex literal");

    if (s.front() == '[') return nlohmann::json::parse(s).get<cplx>();

    auto parse_part = [](const std::string& part, double& re, double& im) {
        if (part.empty()) throw std::invalid_argument("malformed complex literal");
        if (part.back() == 'i' || part.back() == 'I') {
            std::string body = part.substr(0, part.size() - 1);
            if (body.empty() || body == "+") im += 1.0;
            else if (body == "-") im += -1.0;
            else im += std::stod(body);
        } else {
            re += std::stod(part);
        }
    };

    double re = 0.0, im = 0.0;
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split = i;
    }
    if (split == std::string::npos) {
        parse_part(s, re, im);
    } else {
        parse_part(s.substr(0, split), re, im);
        parse_part(s.substr(split), re, im);
    }
    return cplx(re, im);
}

// "a,b,c,d" with complex entries.
inline std::vector<cplx> parse_complex_list(const std::string& s) {
    std::vector<cplx> out;
    std::size_t start = 0;
    int bracket_depth = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i < s.size() && s[i] == '[') ++bracket_depth;
        if (i < s.size() && s[i] == ']') --bracket_depth;
        if (i == s.size() || (s[i] == ',' && bracket_depth == 0)) {
            out.push_back(parse_complex(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

} // namespace deckgroup
