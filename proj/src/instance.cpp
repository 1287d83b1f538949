#include "hypertile/instance.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "hypertile/errors.h"

namespace hypertile {

namespace {

std::vector<long> numbers(const std::string& line, int lineno) {
    std::vector<long> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        long v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
            fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": '" + tok + "' is not an integer");
        out.push_back(v);
    }
    return out;
}

}  // namespace

Instance parse_instance(std::istream& in) {
    Instance inst;
    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) fail(ErrorKind::ParseError, "empty instance");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<long> header = numbers(line, lineno);
    if (header.size() != 3) fail(ErrorKind::ParseError, "line 1: header must be 'p q n'");
    if (header[0] > 1000 || header[1] > 1000 || header[2] < 0)
        fail(ErrorKind::ParseError, "line 1: header values out of range");
    inst.sym = validate_symbol(static_cast<int>(header[0]), static_cast<int>(header[1]));
    const long n = header[2];
    while (static_cast<long>(inst.walks.size()) < n) {
        if (!std::getline(in, line))
            fail(ErrorKind::ParseError, "expected " + std::to_string(n) + " walks, found " + std::to_string(inst.walks.size()));
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        Walk w;
        for (long s : numbers(line, lineno)) {
            if (s < 1 || s > inst.sym.q)
                fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": step " + std::to_string(s) +
                                                " outside 1.." + std::to_string(inst.sym.q));
            w.push_back(static_cast<int>(s));
        }
        inst.walks.push_back(std::move(w));
    }
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": more walks than the header announces");
    }
    return inst;
}

Instance read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
    return parse_instance(in);
}

std::string format_instance(const Instance& inst) {
    std::ostringstream out;
    out << inst.sym.p << ' ' << inst.sym.q << ' ' << inst.walks.size() << '\n';
    for (const Walk& w : inst.walks) {
        for (std::size_t i = 0; i < w.size(); ++i) out << (i ? " " : "") << w[i];
        out << '\n';
    }
    return out.str();
}

}  // namespace hypertile
