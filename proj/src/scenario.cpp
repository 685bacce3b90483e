#include "dtsim/scenario.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace dtsim {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw std::invalid_argument(fmt::format("{}: cannot parse '{}' as a number", key, text));
    }
    return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
    if (text == "true" || text == "1") {
        return true;
    }
    if (text == "false" || text == "0") {
        return false;
    }
    throw std::invalid_argument(fmt::format("{}: expected true or false, got '{}'", key, text));
}

std::string fmt_real(double v) { return fmt::format("{:.17g}", v); }
std::string fmt_bool(bool v) { return v ? "true" : "false"; }

struct Key {
    const char* name;
    std::function<std::string(const ScenarioConfig&)> get;
    std::function<void(ScenarioConfig&, std::string_view key, std::string_view value)> set;
};

template <typename Field>
Key real_key(const char* name, Field field) {
    return {name, [field](const ScenarioConfig& c) { return fmt_real(field(const_cast<ScenarioConfig&>(c))); },
            [field](ScenarioConfig& c, std::string_view k, std::string_view v) {
                field(c) = parse_number<double>(k, v);
            }};
}

/// Mean and std of one uncertain plant parameter, as `plant.<name>` and `plant.<name>_std`.
void add_param_keys(std::vector<Key>& keys, const char* mean_key, const char* std_key, Param p) {
    keys.push_back({mean_key, [p](const ScenarioConfig& c) { return fmt_real(c.plant[p].mean()); },
                    [p](ScenarioConfig& c, std::string_view k, std::string_view v) {
                        c.plant[p] = UncertainReal(parse_number<double>(k, v), c.plant[p].std());
                    }});
    keys.push_back({std_key, [p](const ScenarioConfig& c) { return fmt_real(c.plant[p].std()); },
                    [p](ScenarioConfig& c, std::string_view k, std::string_view v) {
                        const double s = parse_number<double>(k, v);
                        if (!(s >= 0.0)) {
                            throw std::invalid_argument(fmt::format("{} must be >= 0, got {}", k, s));
                        }
                        c.plant[p] = UncertainReal(c.plant[p].mean(), s);
                    }});
}

const std::vector<Key>& key_table() {
    static const std::vector<Key> table = [] {
        std::vector<Key> k;
        k.push_back({"approach", [](const ScenarioConfig& c) { return std::string(to_string(c.approach)); },
                     [](ScenarioConfig& c, std::string_view, std::string_view v) { c.approach = parse_approach(v); }});
        k.push_back(real_key("duration", [](ScenarioConfig& c) -> double& { return c.duration; }));
        k.push_back(real_key("control_period", [](ScenarioConfig& c) -> double& { return c.control_period; }));
        k.push_back(real_key("sensor_period", [](ScenarioConfig& c) -> double& { return c.sensor_period; }));
        k.push_back({"seed", [](const ScenarioConfig& c) { return std::to_string(c.seed); },
                     [](ScenarioConfig& c, std::string_view key, std::string_view v) {
                         c.seed = parse_number<std::uint64_t>(key, v);
                     }});
        k.push_back({"runs", [](const ScenarioConfig& c) { return std::to_string(c.runs); },
                     [](ScenarioConfig& c, std::string_view key, std::string_view v) {
                         c.runs = parse_number<int>(key, v);
                     }});

        k.push_back(real_key("solver.h", [](ScenarioConfig& c) -> double& { return c.solver.h; }));
        k.push_back(real_key("solver.k_num", [](ScenarioConfig& c) -> double& { return c.solver.k_num; }));
        k.push_back(real_key("solver.sigma_init", [](ScenarioConfig& c) -> double& { return c.solver.sigma_init; }));

        add_param_keys(k, "plant.c_air", "plant.c_air_std", Param::CAir);
        add_param_keys(k, "plant.g_box", "plant.g_box_std", Param::GBox);
        add_param_keys(k, "plant.c_heater", "plant.c_heater_std", Param::CHeater);
        add_param_keys(k, "plant.g_heater", "plant.g_heater_std", Param::GHeater);
        add_param_keys(k, "plant.v_heater", "plant.v_heater_std", Param::VHeater);
        add_param_keys(k, "plant.i_heater", "plant.i_heater_std", Param::IHeater);
        add_param_keys(k, "plant.t_room", "plant.t_room_std", Param::TRoom);
        k.push_back({"plant.sample_true_params", [](const ScenarioConfig& c) { return fmt_bool(c.sample_true_params); },
                     [](ScenarioConfig& c, std::string_view key, std::string_view v) {
                         c.sample_true_params = parse_bool(key, v);
                     }});
        k.push_back(real_key("plant.initial_temp", [](ScenarioConfig& c) -> double& { return c.initial_temp; }));

        k.push_back(real_key("sensor.accuracy", [](ScenarioConfig& c) -> double& { return c.sensor_accuracy; }));
        k.push_back({"sensor.box_count", [](const ScenarioConfig& c) { return std::to_string(c.box_sensors); },
                     [](ScenarioConfig& c, std::string_view key, std::string_view v) {
                         c.box_sensors = parse_number<int>(key, v);
                     }});
        k.push_back({"room_sensor.mode", [](const ScenarioConfig& c) { return std::string(to_string(c.room_source)); },
                     [](ScenarioConfig& c, std::string_view, std::string_view v) {
                         c.room_source = parse_room_source(v);
                     }});

        k.push_back(real_key("band.t_low", [](ScenarioConfig& c) -> double& { return c.band.t_low; }));
        k.push_back(real_key("band.t_high", [](ScenarioConfig& c) -> double& { return c.band.t_high; }));
        k.push_back(real_key("band.confidence", [](ScenarioConfig& c) -> double& { return c.band.confidence; }));
        k.push_back({"band.sides", [](const ScenarioConfig& c) { return std::string(to_string(c.band.sides)); },
                     [](ScenarioConfig& c, std::string_view, std::string_view v) {
                         c.band.sides = parse_confidence_sides(v);
                     }});

        k.push_back(real_key("fusion.reliability_limit",
                             [](ScenarioConfig& c) -> double& { return c.fusion.reliability_limit; }));
        k.push_back(real_key("fusion.reset_margin", [](ScenarioConfig& c) -> double& { return c.fusion.reset_margin; }));

        k.push_back(real_key("consistency.k", [](ScenarioConfig& c) -> double& { return c.consistency.k; }));
        k.push_back(real_key("consistency.c", [](ScenarioConfig& c) -> double& { return c.consistency.c; }));
        k.push_back(real_key("consistency.r", [](ScenarioConfig& c) -> double& { return c.consistency.r; }));
        k.push_back({"consistency.window", [](const ScenarioConfig& c) { return std::to_string(c.consistency.window); },
                     [](ScenarioConfig& c, std::string_view key, std::string_view v) {
                         c.consistency.window = parse_number<std::size_t>(key, v);
                     }});
        k.push_back(real_key("consistency.coverage_ratio",
                             [](ScenarioConfig& c) -> double& { return c.consistency.coverage_ratio; }));

        k.push_back({"failure.enabled", [](const ScenarioConfig& c) { return fmt_bool(c.failure.enabled); },
                     [](ScenarioConfig& c, std::string_view key, std::string_view v) {
                         c.failure.enabled = parse_bool(key, v);
                     }});
        k.push_back(real_key("failure.time", [](ScenarioConfig& c) -> double& { return c.failure.time; }));
        k.push_back(real_key("failure.g_box_factor", [](ScenarioConfig& c) -> double& { return c.failure.g_box_factor; }));
        return k;
    }();
    return table;
}

/// n such that n * h == period, or -1 when period is not a whole multiple.
long long multiple_of(double period, double h) {
    const double ratio = period / h;
    const double n = std::round(ratio);
    if (n < 1.0 || std::abs(ratio - n) > 1e-9 * std::max(1.0, n)) {
        return -1;
    }
    return static_cast<long long>(n);
}

}  // namespace

std::string_view to_string(Approach a) {
    switch (a) {
        case Approach::GT: return "GT";
        case Approach::PT: return "PT";
        case Approach::UAPT: return "UAPT";
        case Approach::UADT: return "UADT";
        case Approach::MDTS: return "MDTS";
    }
    return "?";
}

Approach parse_approach(std::string_view text) {
    for (auto a : {Approach::GT, Approach::PT, Approach::UAPT, Approach::UADT, Approach::MDTS}) {
        if (text == to_string(a)) {
            return a;
        }
    }
    throw std::invalid_argument(fmt::format("unknown approach '{}' (expected GT, PT, UAPT, UADT or MDTS)", text));
}

std::vector<Approach> parse_approaches(std::string_view text) {
    std::vector<Approach> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto item = trim(text.substr(0, comma));
        if (!item.empty()) {
            out.push_back(parse_approach(item));
        }
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    if (out.empty()) {
        throw std::invalid_argument("no approach given");
    }
    return out;
}

std::string_view to_string(RoomSource s) {
    switch (s) {
        case RoomSource::Config: return "config";
        case RoomSource::Init: return "init";
        case RoomSource::PerSample: return "per_sample";
    }
    return "?";
}

RoomSource parse_room_source(std::string_view text) {
    if (text == "config") return RoomSource::Config;
    if (text == "init") return RoomSource::Init;
    if (text == "per_sample") return RoomSource::PerSample;
    throw std::invalid_argument(fmt::format("unknown room_sensor.mode '{}' (expected config, init or per_sample)", text));
}

long long ScenarioConfig::steps() const { return multiple_of(duration, solver.h); }

long long ScenarioConfig::steps_per(double period) const { return multiple_of(period, solver.h); }

void ScenarioConfig::validate() const {
    solver.validate();
    plant.validate();
    band.validate();
    fusion.validate();
    consistency.validate();
    sensor_model().validate();

    if (!(duration > 0.0)) {
        throw std::invalid_argument(fmt::format("duration must be > 0, got {}", duration));
    }
    if (runs < 1) {
        throw std::invalid_argument(fmt::format("runs must be >= 1, got {}", runs));
    }
    if (box_sensors < 1) {
        throw std::invalid_argument(fmt::format("sensor.box_count must be >= 1, got {}", box_sensors));
    }
    const std::pair<const char*, double> grids[] = {
        {"duration", duration}, {"control_period", control_period}, {"sensor_period", sensor_period}};
    for (const auto& [name, value] : grids) {
        if (!(value > 0.0) || steps_per(value) < 1) {
            throw std::invalid_argument(
                fmt::format("{} ({}) must be a positive whole multiple of solver.h ({})", name, value, solver.h));
        }
    }
    if (steps_per(control_period) < 2) {
        throw std::invalid_argument("control_period must span at least two solver steps");
    }
    if (failure.enabled) {
        if (!(failure.g_box_factor > 1.0)) {
            throw std::invalid_argument(
                fmt::format("failure.g_box_factor must be > 1, got {}", failure.g_box_factor));
        }
        if (!(failure.time >= 0.0 && failure.time < duration)) {
            throw std::invalid_argument(
                fmt::format("failure.time ({}) must lie within the run [0, {})", failure.time, duration));
        }
    }

    const double dt_bound = euler_stability_bound(plant);
    if (solver.h >= dt_bound) {
        throw std::invalid_argument(fmt::format(
            "solver.h = {} exceeds the forward Euler stability bound {:.6g} s of the twin", solver.h, dt_bound));
    }
    PlantParams worst = plant;
    if (failure.enabled) {
        worst.g_box = UncertainReal(plant.g_box.mean() * failure.g_box_factor);
    }
    const double gt_bound = rk4_stability_bound(worst);
    if (solver.h >= gt_bound) {
        throw std::invalid_argument(fmt::format(
            "solver.h = {} exceeds the RK4 stability bound {:.6g} s of the measurand", solver.h, gt_bound));
    }
}

void set_scenario_key(ScenarioConfig& cfg, std::string_view key, std::string_view value) {
    const auto& table = key_table();
    const auto it = std::find_if(table.begin(), table.end(), [&](const Key& k) { return key == k.name; });
    if (it == table.end()) {
        throw std::invalid_argument(fmt::format("unknown scenario key '{}'", key));
    }
    it->set(cfg, key, value);
}

ScenarioConfig parse_scenario(std::string_view text, ScenarioConfig base) {
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument(fmt::format("line {}: expected 'key = value'", line_no));
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        try {
            set_scenario_key(base, key, value);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(fmt::format("line {}: {}", line_no, e.what()));
        }
    }
    return base;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open scenario file {}", path.string()));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scenario(buf.str());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(fmt::format("{}: {}", path.string(), e.what()));
    }
}

std::string to_text(const ScenarioConfig& cfg) {
    std::string out;
    for (const auto& k : key_table()) {
        out += fmt::format("{} = {}\n", k.name, k.get(cfg));
    }
    return out;
}

std::vector<std::string> scenario_keys() {
    std::vector<std::string> out;
    for (const auto& k : key_table()) {
        out.emplace_back(k.name);
    }
    return out;
}

}  // namespace dtsim
