#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace laxscatter::cli {

Json cjson(const std::vector<cplx>& v) {
    Json a = Json::array();
    for (const auto& z : v) a.push_back(cjson(z));
    return a;
}

namespace {

void emit(const Json& j, std::string& out, int indent) {
    const std::string pad(2 * (indent + 1), ' '), close(2 * indent, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad + Json(it.key()).dump() + ": ";
                emit(it.value(), out, indent + 1);
            }
            out += "\n" + close + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // short numeric arrays stay on one line
            const bool flat = j.size() <= 4 && std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
            out += flat ? "[" : "[\n";
            for (size_t i = 0; i < j.size(); ++i) {
                if (i) out += flat ? ", " : ",\n";
                if (!flat) out += pad;
                emit(j[i], out, indent + 1);
            }
            out += flat ? "]" : "\n" + close + "]";
            return;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            if (!std::isfinite(v)) {
                out += "null";
                return;
            }
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out += buf;
            return;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

std::string dump(const Json& j) {
    std::string out;
    emit(j, out, 0);
    out += "\n";
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InputError("cannot write " + path);
    os << text;
}

}  // namespace laxscatter::cli
