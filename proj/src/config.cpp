/*
   Copyright 2026 The mimosec Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "mimosec/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "mimosec/errors.hpp"

namespace mimosec {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view s) {
    s = trim(s);
    T value{};
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc() || ptr != end || s.empty())
        throw InvalidInput("cannot parse number '" + std::string(s) + "'");
    return value;
}

bool parse_bool(std::string_view s) {
    s = trim(s);
    if (s == "true") return true;
    if (s == "false") return false;
    throw InvalidInput("expected true or false, got '" + std::string(s) + "'");
}

std::vector<std::string_view> split_list(std::string_view s) {
    s = trim(s);
    if (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
    std::vector<std::string_view> items;
    if (trim(s).empty()) return items;
    std::size_t start = 0;
    while (true) {
        const auto comma = s.find(',', start);
        items.push_back(trim(s.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    for (auto item : items)
        if (item.empty()) throw InvalidInput("empty list element");
    return items;
}

template <typename T>
void require_unique(const std::vector<T>& v, const char* what) {
    std::set<T> seen(v.begin(), v.end());
    if (seen.size() != v.size()) throw InvalidInput(std::string(what) + " has duplicate entries");
}

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::vector<double> parse_real_list(std::string_view list) {
    std::vector<double> out;
    for (auto item : split_list(list)) out.push_back(parse_number<double>(item));
    return out;
}

std::vector<Scheme> parse_scheme_list(std::string_view list) {
    std::vector<Scheme> out;
    for (auto item : split_list(list)) out.push_back(parse_scheme(item));
    return out;
}

void ExperimentConfig::validate() const {
    if (M < 1) throw InvalidInput("config: M must be >= 1");
    if (N_list.empty()) throw InvalidInput("config: N_list is empty");
    if (phi_grid.empty()) throw InvalidInput("config: phi_grid is empty");
    if (!noise_free && snr_grid_db.empty()) throw InvalidInput("config: snr_grid_db is empty");
    if (schemes.empty()) throw InvalidInput("config: schemes is empty");
    if (trials < 1) throw InvalidInput("config: trials must be >= 1");
    if (threads < 0) throw InvalidInput("config: threads must be >= 0");
    if (!(solver_tol > 0.0)) throw InvalidInput("config: solver_tol must be positive");
    if (!std::isfinite(eve_snr_offset_db)) throw InvalidInput("config: eve_snr_offset_db must be finite");
    const int n_min = *std::min_element(N_list.begin(), N_list.end());
    const int n_max = *std::max_element(N_list.begin(), N_list.end());
    if (M > n_min) throw InvalidInput("config: M must not exceed min(N_list)");
    if (L <= n_max) throw InvalidInput("config: L must exceed max(N_list)");
    for (double phi : phi_grid)
        if (!(phi >= 0.0 && phi <= 1.0)) throw InvalidInput("config: phi_grid values must lie in [0, 1]");
    for (double snr : snr_grid_db)
        if (!std::isfinite(snr)) throw InvalidInput("config: snr_grid_db values must be finite");
    require_unique(N_list, "config: N_list");
    require_unique(phi_grid, "config: phi_grid");
    require_unique(snr_grid_db, "config: snr_grid_db");
    require_unique(schemes, "config: schemes");
}

void apply_config_text(ExperimentConfig& cfg, std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw InvalidInput("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        try {
            if (key == "M") cfg.M = parse_number<int>(value);
            else if (key == "N_list") {
                cfg.N_list.clear();
                for (auto item : split_list(value)) cfg.N_list.push_back(parse_number<int>(item));
            } else if (key == "L") cfg.L = parse_number<int>(value);
            else if (key == "phi_grid") cfg.phi_grid = parse_real_list(value);
            else if (key == "snr_grid_db") cfg.snr_grid_db = parse_real_list(value);
            else if (key == "trials") cfg.trials = parse_number<int>(value);
            else if (key == "master_seed") cfg.master_seed = parse_number<std::uint64_t>(value);
            else if (key == "schemes") cfg.schemes = parse_scheme_list(value);
            else if (key == "noise_free") cfg.noise_free = parse_bool(value);
            else if (key == "eve_enabled") cfg.eve_enabled = parse_bool(value);
            else if (key == "eve_snr_offset_db") cfg.eve_snr_offset_db = parse_number<double>(value);
            else if (key == "solver_tol") cfg.solver_tol = parse_number<double>(value);
            else if (key == "threads") cfg.threads = parse_number<int>(value);
            else throw InvalidInput("unknown key '" + key + "'");
        } catch (const InvalidInput& e) {
            throw InvalidInput("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg;
    apply_config_text(cfg, text);
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path, "cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError(path, "read failed");
    return parse_config(buf.str());
}

std::string format_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    auto reals = [&](const std::vector<double>& v) {
        out << '[';
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << format_real(v[i]);
        out << "]\n";
    };
    out << "M = " << cfg.M << '\n';
    out << "N_list = [";
    for (std::size_t i = 0; i < cfg.N_list.size(); ++i) out << (i ? ", " : "") << cfg.N_list[i];
    out << "]\n";
    out << "L = " << cfg.L << '\n';
    out << "phi_grid = ";
    reals(cfg.phi_grid);
    out << "snr_grid_db = ";
    reals(cfg.snr_grid_db);
    out << "trials = " << cfg.trials << '\n';
    out << "master_seed = " << cfg.master_seed << '\n';
    out << "schemes = [";
    for (std::size_t i = 0; i < cfg.schemes.size(); ++i) out << (i ? ", " : "") << to_string(cfg.schemes[i]);
    out << "]\n";
    out << "noise_free = " << (cfg.noise_free ? "true" : "false") << '\n';
    out << "eve_enabled = " << (cfg.eve_enabled ? "true" : "false") << '\n';
    out << "eve_snr_offset_db = " << format_real(cfg.eve_snr_offset_db) << '\n';
    out << "solver_tol = " << format_real(cfg.solver_tol) << '\n';
    out << "threads = " << cfg.threads << '\n';
    return out.str();
}

} // namespace mimosec
