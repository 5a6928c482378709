#include "netwalk/config.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "netwalk/csv.hpp"
#include "netwalk/errors.hpp"
#include "netwalk/rng.hpp"

namespace netwalk {

namespace {

std::string trim(std::string s) {
    const auto issp = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    return s;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = value.find(',', start);
        out.push_back(trim(value.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    out.erase(std::remove(out.begin(), out.end(), std::string{}), out.end());
    return out;
}

double to_double(const std::string& s, std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected a number, got \"" + s + "\"", line);
    }
}

std::int64_t to_int(const std::string& s, std::size_t line) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError("expected an integer, got \"" + s + "\"", line);
    return v;
}

std::uint64_t to_u64(const std::string& s, std::size_t line) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError("expected an unsigned integer, got \"" + s + "\"", line);
    return v;
}

} // namespace

void ExperimentConfig::validate() const {
    if (models.empty() || ns.empty() || ks.empty() || dynamics.empty())
        throw UsageError("models, ns, ks and dynamics must all be non-empty");
    if (steps <= 0) throw UsageError("steps must be positive");
    if (steps % 100 != 0) throw UsageError("steps must be divisible by 100");
    if (networks_per_config <= 0) throw UsageError("networks_per_config must be positive");
    if (walks_per_network <= 0) throw UsageError("walks_per_network must be positive");
    if (thin <= 0) throw UsageError("thin must be positive");
    if (!(waxman_beta > 0.0)) throw UsageError("waxman_beta must be positive");
    for (auto n : ns)
        for (auto k : ks) {
            GeneratorSpec spec;
            spec.n = n;
            spec.target_k = k;
            spec.waxman_beta = waxman_beta;
            spec.lfr = lfr;
            for (auto m : models) {
                spec.model = m;
                spec.validate();
            }
        }
}

std::string ExperimentConfig::serialize() const {
    std::ostringstream out;
    out << "models = ";
    for (std::size_t i = 0; i < models.size(); ++i)
        out << (i ? ", " : "") << to_string(models[i]);
    out << "\nns = ";
    for (std::size_t i = 0; i < ns.size(); ++i) out << (i ? ", " : "") << ns[i];
    out << "\nks = ";
    for (std::size_t i = 0; i < ks.size(); ++i) out << (i ? ", " : "") << format_double(ks[i]);
    out << "\ndynamics = ";
    for (std::size_t i = 0; i < dynamics.size(); ++i)
        out << (i ? ", " : "") << to_string(dynamics[i]);
    out << "\nsteps = " << steps;
    out << "\nnetworks_per_config = " << networks_per_config;
    out << "\nwalks_per_network = " << walks_per_network;
    out << "\nmaster_seed = " << master_seed;
    out << "\nwaxman_beta = " << format_double(waxman_beta);
    out << "\nlfr_communities = " << lfr.n_communities;
    out << "\nlfr_t1 = " << format_double(lfr.t1);
    out << "\nlfr_t2 = " << format_double(lfr.t2);
    out << "\nlfr_mu = " << format_double(lfr.mu);
    out << "\nlfr_max_k = " << (lfr.max_k == 0 ? std::string("auto") : std::to_string(lfr.max_k));
    out << "\noutput_dir = " << output_dir;
    out << "\nthin = " << thin;
    out << "\n";
    return out.str();
}

std::uint64_t ExperimentConfig::hash() const {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (char c : serialize()) h = mix64(h ^ static_cast<unsigned char>(c));
    return h;
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line.erase(hash_pos);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected key = value", line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "models") {
            cfg.models.clear();
            for (const auto& tok : split_list(value)) cfg.models.push_back(model_from_string(tok));
        } else if (key == "ns") {
            cfg.ns.clear();
            for (const auto& tok : split_list(value))
                cfg.ns.push_back(static_cast<std::uint32_t>(to_int(tok, line_no)));
        } else if (key == "ks") {
            cfg.ks.clear();
            for (const auto& tok : split_list(value)) cfg.ks.push_back(to_double(tok, line_no));
        } else if (key == "dynamics") {
            cfg.dynamics.clear();
            for (const auto& tok : split_list(value))
                cfg.dynamics.push_back(walk_kind_from_string(tok));
        } else if (key == "steps") {
            cfg.steps = static_cast<int>(to_int(value, line_no));
        } else if (key == "networks_per_config") {
            cfg.networks_per_config = static_cast<int>(to_int(value, line_no));
        } else if (key == "walks_per_network") {
            cfg.walks_per_network = static_cast<int>(to_int(value, line_no));
        } else if (key == "master_seed") {
            cfg.master_seed = to_u64(value, line_no);
        } else if (key == "waxman_beta") {
            cfg.waxman_beta = to_double(value, line_no);
        } else if (key == "lfr_communities") {
            cfg.lfr.n_communities = static_cast<int>(to_int(value, line_no));
        } else if (key == "lfr_t1") {
            cfg.lfr.t1 = to_double(value, line_no);
        } else if (key == "lfr_t2") {
            cfg.lfr.t2 = to_double(value, line_no);
        } else if (key == "lfr_mu") {
            cfg.lfr.mu = to_double(value, line_no);
        } else if (key == "lfr_max_k") {
            cfg.lfr.max_k = (value == "auto") ? 0 : static_cast<int>(to_int(value, line_no));
        } else if (key == "output_dir") {
            cfg.output_dir = value;
        } else if (key == "thin") {
            cfg.thin = static_cast<int>(to_int(value, line_no));
        } else {
            throw ParseError("unknown config key: " + key, line_no);
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    return parse_config(read_text_file(path));
}

} // namespace netwalk
