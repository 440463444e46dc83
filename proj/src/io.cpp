#include "tracelab/io.hpp"

#include <fstream>
#include <sstream>

namespace tracelab {

namespace {

ordered_json int_to_json(const Int& v) {
    if (v.fits_slong_p()) return ordered_json(v.get_si());
    return ordered_json(v.get_str());
}

Int int_from_json(const ordered_json& j) {
    if (j.is_string()) return Int(j.get<std::string>());
    return Int(static_cast<long>(j.get<long long>()));
}

} // namespace

ordered_json cyc_to_json(const CycNum& v) {
    ordered_json j;
    j["N"] = v.order();
    ordered_json num = ordered_json::array();
    ordered_json den = ordered_json::array();
    for (const auto& c : v.coeffs()) {
        num.push_back(int_to_json(c.get_num()));
        den.push_back(int_to_json(c.get_den()));
    }
    j["num"] = std::move(num);
    j["den"] = std::move(den);
    return j;
}

CycNum cyc_from_json(const ordered_json& j) {
    const unsigned long long n = j.at("N").get<unsigned long long>();
    unsigned p = 0, k = 0;
    if (!prime_power_decompose(n, p, k)) throw DomainError("cyclotomic order must be a prime power");
    const auto& num = j.at("num");
    const auto& den = j.at("den");
    if (num.size() != den.size()) throw DomainError("num/den length mismatch");
    std::vector<Rat> coeffs;
    for (size_t i = 0; i < num.size(); ++i) {
        Rat c(int_from_json(num[i]), int_from_json(den[i]));
        c.canonicalize();
        coeffs.push_back(c);
    }
    return CycNum::from_poly(std::move(coeffs), p, k);
}

ordered_json datum_to_json(const TraceDatum& d) {
    const FFTower& t = d.tower();
    ordered_json j;
    j["schema"] = "trace-lab/1";
    j["space"] = d.dim();
    j["q"] = t.field_label(1);
    ordered_json levels;
    for (int m = 1; m <= d.levels(); ++m) {
        ordered_json rows = ordered_json::array();
        const std::uint64_t total = d.points(m);
        for (std::uint64_t i = 0; i < total; ++i) {
            ordered_json point = ordered_json::array();
            for (const auto& coord : t.point_at(d.dim(), m, i)) point.push_back(coord.c);
            rows.push_back(ordered_json::array({point, cyc_to_json(d.value(m, i))}));
        }
        levels[std::to_string(m)] = std::move(rows);
    }
    j["levels"] = std::move(levels);
    return j;
}

TraceDatum datum_from_json(const FFTower& tower, const ordered_json& j) {
    const int dim = j.at("space").get<int>();
    if (j.at("q").get<std::string>() != tower.field_label(1))
        throw DomainError("datum base field does not match the tower");
    const auto& levels = j.at("levels");
    int level_bound = 0;
    for (auto it = levels.begin(); it != levels.end(); ++it)
        level_bound = std::max(level_bound, std::stoi(it.key()));
    TraceDatum d(tower, dim, level_bound);
    for (auto it = levels.begin(); it != levels.end(); ++it) {
        const int m = std::stoi(it.key());
        for (const auto& row : it.value()) {
            const auto& point = row.at(0);
            if (static_cast<int>(point.size()) != dim) throw DomainError("point arity mismatch");
            std::vector<FFElem> pt;
            for (const auto& coord : point)
                pt.push_back(tower.from_coeffs(m, coord.get<std::vector<std::uint32_t>>()));
            d.value(m, tower.point_index(pt)) = cyc_from_json(row.at(1));
        }
    }
    return d;
}

std::string datum_to_csv(const TraceDatum& d) {
    const FFTower& t = d.tower();
    std::ostringstream os;
    os << "level,point_index,point,value\n";
    for (int m = 1; m <= d.levels(); ++m) {
        const std::uint64_t total = d.points(m);
        for (std::uint64_t i = 0; i < total; ++i) {
            os << m << "," << i << ",\"(";
            const auto pt = t.point_at(d.dim(), m, i);
            for (size_t c = 0; c < pt.size(); ++c) {
                if (c) os << ";";
                os << t.index_of(pt[c]);
            }
            os << ")\",\"" << d.value(m, i).to_string() << "\"\n";
        }
    }
    return os.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write " + path);
    out << text;
}

} // namespace tracelab
