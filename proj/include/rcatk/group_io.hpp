#pragma once

// Group descriptor files:
//
//   # comment
//   dim 2
//   conductor 3
//   gen
//   -1 ; 1
//   0 ; 1
//   gen
//   ...
//
// Each `gen` block is followed by `dim` rows of `dim` cyclotomic literals
// separated by `;`.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cyclo.hpp"
#include "error.hpp"
#include "group.hpp"
#include "matrix.hpp"

namespace rcatk {

struct GroupDescriptor {
    std::size_t dim = 0;
    unsigned conductor = 0;
    std::vector<CycloMatrix> generators;
};

namespace detail {

inline std::string trim(const std::string& s)
{
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

inline std::string strip_comment(const std::string& s)
{
    auto pos = s.find('#');
    return trim(pos == std::string::npos ? s : s.substr(0, pos));
}

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(trim(cur));
    return out;
}

inline unsigned long parse_positive(const std::string& s, std::size_t line, const char* what)
{
    if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw InputError(std::string("expected a positive integer for ") + what + ", got '" + s + "'", line);
    unsigned long v = std::stoul(s);
    if (v == 0)
        throw InputError(std::string(what) + " must be positive", line);
    return v;
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace detail

inline GroupDescriptor parse_group_descriptor(const std::string& text)
{
    GroupDescriptor d;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    std::vector<std::vector<CyclotomicNumber>> rows;
    bool in_gen = false;
    auto flush = [&](std::size_t line) {
        if (!in_gen)
            return;
        if (rows.size() != d.dim)
            throw InputError("gen block has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(d.dim),
                             line);
        d.generators.push_back(CycloMatrix::from_rows(rows));
        rows.clear();
        in_gen = false;
    };
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::strip_comment(raw);
        if (line.empty())
            continue;
        std::istringstream words(line);
        std::string head;
        words >> head;
        if (head == "dim" || head == "conductor") {
            if (in_gen)
                throw InputError("'" + head + "' inside a gen block", lineno);
            std::string value;
            words >> value;
            std::string extra;
            if (words >> extra)
                throw InputError("trailing text after " + head, lineno);
            auto v = detail::parse_positive(value, lineno, head.c_str());
            if (head == "dim") {
                if (d.dim)
                    throw InputError("duplicate dim", lineno);
                d.dim = v;
            } else {
                if (d.conductor)
                    throw InputError("duplicate conductor", lineno);
                d.conductor = static_cast<unsigned>(v);
            }
            continue;
        }
        if (head == "gen") {
            if (line != "gen")
                throw InputError("'gen' takes no arguments", lineno);
            if (!d.dim || !d.conductor)
                throw InputError("dim and conductor must precede gen blocks", lineno);
            flush(lineno);
            in_gen = true;
            continue;
        }
        if (!in_gen)
            throw InputError("unexpected line '" + line + "'", lineno);
        if (rows.size() == d.dim)
            throw InputError("too many rows in gen block", lineno);
        auto cells = detail::split(line, ';');
        if (cells.size() != d.dim)
            throw InputError("row has " + std::to_string(cells.size()) + " entries, expected " + std::to_string(d.dim),
                             lineno);
        std::vector<CyclotomicNumber> row;
        for (const auto& cell : cells) {
            try {
                row.push_back(parse_cyclotomic(cell, d.conductor));
            } catch (const InputError& e) {
                throw InputError(e.what(), lineno);
            }
        }
        rows.push_back(std::move(row));
    }
    flush(lineno);
    if (!d.dim || !d.conductor)
        throw InputError("missing dim or conductor");
    if (d.generators.empty())
        throw InputError("no gen blocks");
    return d;
}

inline FiniteMatrixGroup build_group(const GroupDescriptor& d, std::size_t cap = kDefaultGroupCap)
{
    return FiniteMatrixGroup::generate(d.dim, d.conductor, d.generators, cap);
}

inline FiniteMatrixGroup load_group(const std::string& path, std::size_t cap = kDefaultGroupCap)
{
    return build_group(parse_group_descriptor(detail::read_file(path)), cap);
}

} // namespace rcatk
