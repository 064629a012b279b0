#include "json_util.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace oqs::jsonio {

std::string format_real(double v) {
    if (!std::isfinite(v)) throw std::runtime_error("cannot serialize non-finite real");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

namespace {

void dump_value(const Json& j, std::string& out) {
    switch (j.type()) {
        case Json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += Json(it.key()).dump();  // proper string escaping
                out += ':';
                dump_value(it.value(), out);
            }
            out += '}';
            break;
        }
        case Json::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ',';
                first = false;
                dump_value(v, out);
            }
            out += ']';
            break;
        }
        case Json::value_t::number_float:
            out += format_real(j.get<double>());
            break;
        default:
            out += j.dump();
            break;
    }
}

}  // namespace

std::string dump(const Json& j) {
    std::string out;
    dump_value(j, out);
    return out;
}

Json complex_to_json(double re, double im) { return Json::array({re, im}); }

}  // namespace oqs::jsonio
