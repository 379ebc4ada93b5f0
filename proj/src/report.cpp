#include "covgrav/report.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <json.hpp>

namespace covgrav {

using nlohmann::json;

std::string report_to_json(const Report& r) {
    json j;
    j["suite"] = r.suite;
    j["seed"] = r.seed;
    j["samples"] = r.samples;
    j["tolerance"] = r.tolerance;
    j["checks"] = json::array();
    for (const auto& c : r.checks) {
        json jc;
        jc["name"] = c.name;
        jc["max_residual"] = c.max_residual;
        jc["tolerance"] = c.tolerance;
        jc["pass"] = c.pass;
        jc["paper_ref"] = c.paper_ref;
        jc["samples"] = c.samples;
        if (c.informational) jc["informational"] = true;
        j["checks"].push_back(jc);
    }
    j["environment"] = {{"version", r.version}, {"c0_factor", r.c0_factor}, {"timestamp", r.timestamp}};
    j["pass"] = r.all_pass();
    return j.dump(2);
}

void write_report(const Report& r, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        out << report_to_json(r) << "\n";
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move report into place at '" + path + "'");
}

void print_report(const Report& r) {
    std::printf("suite: %s  (seed %llu, samples %ld)\n", r.suite.c_str(),
                static_cast<unsigned long long>(r.seed), r.samples);
    for (const auto& c : r.checks)
        std::printf("  [%s] %-34s max_residual %10.3e  tol %8.1e  (%s)\n",
                    c.informational ? "info" : (c.pass ? "pass" : "FAIL"), c.name.c_str(), c.max_residual,
                    c.tolerance, c.paper_ref.c_str());
    std::printf("result: %s\n", r.all_pass() ? "pass" : "FAIL");
}

std::string current_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

}  // namespace covgrav
