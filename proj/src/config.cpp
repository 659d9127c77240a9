#include "cmedac/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cmedac/rng.hpp"

namespace cmedac {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

uint64_t parse_u64(const std::string& value, const std::string& key) {
    try {
        size_t pos = 0;
        if (!value.empty() && value[0] == '-')
            throw ConfigError(key + " must be non-negative");
        uint64_t v = std::stoull(value, &pos);
        if (pos != value.size()) throw ConfigError(key + ": trailing junk in value");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse integer for key " + key + ": " + value);
    }
}

double parse_double(const std::string& value, const std::string& key) {
    try {
        size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw ConfigError(key + ": trailing junk in value");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse number for key " + key + ": " + value);
    }
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("cannot parse boolean for key " + key + ": " + value);
}

// durations in seconds round up to whole cycles
uint64_t seconds_to_cycles(double seconds, double clock_period_s) {
    if (!(seconds >= 0)) throw ConfigError("durations must be non-negative");
    return static_cast<uint64_t>(std::ceil(seconds / clock_period_s));
}

struct RawDoc {
    // section -> key -> value (single-valued keys)
    std::map<std::string, std::map<std::string, std::string>> values;
    std::vector<std::string> task_lines;  // "task <id> k=v ..."
    std::vector<std::pair<int, int>> dep_edges;
};

RawDoc read_raw(std::istream& in) {
    RawDoc doc;
    std::string line, section;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // strip comments
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("bad section header at line " + std::to_string(lineno));
            section = line.substr(1, line.size() - 2);
            continue;
        }
        if (section.empty())
            throw ConfigError("directive before any [section] at line " +
                              std::to_string(lineno));
        if (section == "tasks" && line.rfind("task ", 0) == 0) {
            doc.task_lines.push_back(line);
            continue;
        }
        if (section == "tasks" && line.rfind("dep ", 0) == 0) {
            std::istringstream ls(line.substr(4));
            int a, b;
            if (!(ls >> a >> b))
                throw ConfigError("bad dep line at line " + std::to_string(lineno));
            doc.dep_edges.emplace_back(a, b);
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value at line " + std::to_string(lineno));
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key at line " + std::to_string(lineno));
        auto [it, inserted] = doc.values[section].emplace(key, value);
        (void)it;
        if (!inserted)
            throw ConfigError("duplicate key " + key + " in [" + section + "]");
    }
    return doc;
}

TaskOverride parse_task_line(const std::string& line) {
    std::istringstream ls(line);
    std::string word;
    ls >> word;  // "task"
    TaskOverride ov;
    if (!(ls >> ov.id) || ov.id < 0) throw ConfigError("bad task id in: " + line);
    while (ls >> word) {
        size_t eq = word.find('=');
        if (eq == std::string::npos)
            throw ConfigError("task attributes must be key=value in: " + line);
        std::string key = word.substr(0, eq);
        std::string value = word.substr(eq + 1);
        if (key == "frames")
            ov.frames = parse_u64(value, key);
        else if (key == "exec")
            ov.exec_cycles = parse_u64(value, key);
        else if (key == "idle")
            ov.idle_cycles = parse_u64(value, key);
        else if (key == "phase")
            ov.phase = parse_u64(value, key);
        else
            throw ConfigError("unknown task attribute " + key + " in: " + line);
    }
    return ov;
}

}  // namespace

FullConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
    RawDoc doc = read_raw(in);
    FullConfig cfg;

    // [timing] first; duration keys elsewhere may be given in seconds
    if (auto s = doc.values.find("timing"); s != doc.values.end()) {
        bool have_period = false;
        for (const auto& [key, value] : s->second) {
            if (key == "clock_mhz") {
                double mhz = parse_double(value, key);
                if (!(mhz > 0)) throw ConfigError("clock_mhz must be positive");
                cfg.timing.clock_period_s = 1.0 / (mhz * 1e6);
                have_period = true;
            } else if (key == "clock_period_ns") {
                double ns = parse_double(value, key);
                if (!(ns > 0)) throw ConfigError("clock_period_ns must be positive");
                cfg.timing.clock_period_s = ns * 1e-9;
                have_period = true;
            } else if (key == "read_cycles_per_frame")
                cfg.timing.read_cycles_per_frame = parse_u64(value, key);
            else if (key == "write_cycles_per_frame")
                cfg.timing.write_cycles_per_frame = parse_u64(value, key);
            else if (key == "ec_cycles_per_frame")
                cfg.timing.ec_cycles_per_frame = parse_u64(value, key);
            else if (key == "hash_block_bits")
                cfg.timing.hash_block_bits = parse_u64(value, key);
            else if (key == "hash_clock_cycles")
                cfg.timing.hash_clock_cycles = parse_u64(value, key);
            else if (key == "hash_n_msg")
                cfg.timing.hash_n_msg = parse_u64(value, key);
            else if (key == "hash_fmax_mhz")
                cfg.timing.hash_fmax_hz = parse_double(value, key) * 1e6;
            else
                throw ConfigError("unknown key in [timing]: " + key);
        }
        (void)have_period;
    }

    if (auto s = doc.values.find("memory"); s != doc.values.end()) {
        for (const auto& [key, value] : s->second) {
            if (key == "tasks")
                cfg.memory.tasks = parse_u64(value, key);
            else if (key == "frames_per_task")
                cfg.memory.frames_per_task = parse_u64(value, key);
            else if (key == "rows")
                cfg.memory.geometry.rows = uint32_t(parse_u64(value, key));
            else if (key == "cols")
                cfg.memory.geometry.cols = uint32_t(parse_u64(value, key));
            else if (key == "fill") {
                if (value == "zero")
                    cfg.memory.fill = FillKind::Zero;
                else if (value == "random")
                    cfg.memory.fill = FillKind::Random;
                else
                    throw ConfigError("fill must be zero or random");
            } else if (key == "content_seed")
                cfg.memory.content_seed = parse_u64(value, key);
            else if (key == "default_exec")
                cfg.memory.default_exec = parse_u64(value, key);
            else if (key == "default_idle")
                cfg.memory.default_idle = parse_u64(value, key);
            else if (key == "default_exec_s")
                cfg.memory.default_exec = seconds_to_cycles(parse_double(value, key),
                                                            cfg.timing.clock_period_s);
            else if (key == "default_idle_s")
                cfg.memory.default_idle = seconds_to_cycles(parse_double(value, key),
                                                            cfg.timing.clock_period_s);
            else
                throw ConfigError("unknown key in [memory]: " + key);
        }
    }
    if (cfg.memory.tasks == 0 || cfg.memory.frames_per_task == 0)
        throw ConfigError("[memory] needs tasks >= 1 and frames_per_task >= 1");
    if (cfg.memory.geometry.frame_bits() == 0)
        throw ConfigError("[memory] needs rows >= 1 and cols >= 1");

    if (auto s = doc.values.find("tasks"); s != doc.values.end()) {
        for (const auto& [key, value] : s->second) {
            if (key == "deps_file")
                cfg.memory.deps_file = base_dir / value;
            else
                throw ConfigError("unknown key in [tasks]: " + key);
        }
    }
    for (const auto& line : doc.task_lines) {
        TaskOverride ov = parse_task_line(line);
        if (uint64_t(ov.id) >= cfg.memory.tasks)
            throw ConfigError("task override id out of range in: " + line);
        cfg.memory.overrides.push_back(ov);
    }
    cfg.memory.dep_edges = doc.dep_edges;

    if (auto s = doc.values.find("faults"); s != doc.values.end()) {
        FaultModel fm;
        bool enabled = true;
        for (const auto& [key, value] : s->second) {
            if (key == "model") {
                if (value == "none") {
                    enabled = false;
                } else {
                    try {
                        fm.kind = fault_kind_from_name(value);
                    } catch (const std::invalid_argument& e) {
                        throw ConfigError(e.what());
                    }
                }
            } else if (key == "burst_length")
                fm.burst_length = uint32_t(parse_u64(value, key));
            else if (key == "frames_per_task")
                fm.frames_per_task = uint32_t(parse_u64(value, key));
            else if (key == "tasks_affected")
                fm.tasks_affected = uint32_t(parse_u64(value, key));
            else if (key == "allow_dummy")
                fm.allow_dummy = parse_bool(value, key);
            else
                throw ConfigError("unknown key in [faults]: " + key);
        }
        if (enabled) cfg.fault = fm;
    }

    if (auto s = doc.values.find("weights"); s != doc.values.end()) {
        for (const auto& [key, value] : s->second) {
            if (key == "w_a")
                cfg.weights.a = parse_double(value, key);
            else if (key == "w_b")
                cfg.weights.b = parse_double(value, key);
            else if (key == "w_c")
                cfg.weights.c = parse_double(value, key);
            else if (key == "w_d")
                cfg.weights.d = parse_double(value, key);
            else
                throw ConfigError("unknown key in [weights]: " + key);
        }
        try {
            cfg.weights.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }

    if (auto s = doc.values.find("campaign"); s != doc.values.end()) {
        for (const auto& [key, value] : s->second) {
            if (key == "runs")
                cfg.campaign.runs = parse_u64(value, key);
            else if (key == "seed")
                cfg.campaign.seed = parse_u64(value, key);
            else if (key == "scrub_mode") {
                if (value == "readback")
                    cfg.campaign.scrub_mode = ScrubMode::Readback;
                else if (value == "periodic")
                    cfg.campaign.scrub_mode = ScrubMode::Periodic;
                else
                    throw ConfigError("scrub_mode must be readback or periodic");
            } else if (key == "scrub_period")
                cfg.campaign.scrub_period = parse_u64(value, key);
            else if (key == "transitive_criticality")
                cfg.campaign.transitive_criticality = parse_bool(value, key);
            else
                throw ConfigError("unknown key in [campaign]: " + key);
        }
    }

    for (const auto& [section, kv] : doc.values) {
        (void)kv;
        if (section != "memory" && section != "tasks" && section != "faults" &&
            section != "weights" && section != "timing" && section != "campaign")
            throw ConfigError("unknown section [" + section + "]");
    }

    try {
        cfg.timing.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

FullConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path.string());
    return parse_config(in, path.parent_path().empty() ? "." : path.parent_path());
}

ConfigMemory build_memory(const MemorySpec& spec) {
    std::vector<TaskSpec> tasks(spec.tasks);
    std::vector<uint64_t> frame_counts(spec.tasks, spec.frames_per_task);
    for (auto& t : tasks) {
        t.exec_cycles = spec.default_exec;
        t.idle_cycles = spec.default_idle;
    }
    for (const TaskOverride& ov : spec.overrides) {
        TaskSpec& t = tasks.at(ov.id);
        if (ov.frames) frame_counts.at(ov.id) = *ov.frames;
        if (ov.exec_cycles) t.exec_cycles = *ov.exec_cycles;
        if (ov.idle_cycles) t.idle_cycles = *ov.idle_cycles;
        if (ov.phase) t.phase_offset = *ov.phase;
    }
    for (size_t z = 0; z < tasks.size(); ++z) {
        if (frame_counts[z] == 0)
            throw ConfigError("task " + std::to_string(z) + " has zero frames");
        Rng rng(Rng::derive(spec.content_seed, z));
        for (uint64_t k = 0; k < frame_counts[z]; ++k) {
            Frame f(spec.geometry);
            if (spec.fill == FillKind::Random) {
                auto words = f.words();
                uint64_t bits = spec.geometry.frame_bits();
                for (size_t w = 0; w < words.size(); ++w) words[w] = rng.next();
                // padding bits beyond v*h stay zero
                if (bits % 64) words.back() &= ~0ull << (64 - bits % 64);
            }
            tasks[z].frames.push_back(std::move(f));
        }
    }
    try {
        return ConfigMemory::build(std::move(tasks), spec.geometry);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

DependencyGraph build_dependency_graph(const MemorySpec& spec) {
    DependencyGraph g;
    g.node_count = static_cast<int>(spec.tasks);
    g.edges = spec.dep_edges;
    if (spec.deps_file) {
        try {
            DependencyGraph file = read_dependency_graph(*spec.deps_file, g.node_count);
            g.edges.insert(g.edges.end(), file.edges.begin(), file.edges.end());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    return g;
}

Scenario build_scenario(const FullConfig& config, Exec exec) {
    Scenario sc;
    sc.memory = build_memory(config.memory);
    sc.golden = snapshot_golden(sc.memory, exec);
    sc.deps = build_dependency_graph(config.memory);
    for (size_t z = 0; z < sc.memory.task_count(); ++z)
        for (int producer : sc.memory.task(z).depends_on)
            sc.deps.edges.emplace_back(producer, static_cast<int>(z));
    try {
        criticality(sc.deps, config.campaign.transitive_criticality);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());  // cycles are a config-time error
    }
    sc.fault = config.fault;
    sc.weights = config.weights;
    sc.timing = config.timing;
    sc.campaign = config.campaign;
    return sc;
}

}  // namespace cmedac
