#include "cmedac/scheduler.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cmedac {

DependencyGraph read_dependency_graph(const std::filesystem::path& path,
                                      int node_count) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open dependency file: " + path.string());
    DependencyGraph g;
    g.node_count = node_count;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int producer, dependent;
        if (!(ls >> producer >> dependent))
            throw std::invalid_argument("malformed dependency line: " + line);
        g.edges.emplace_back(producer, dependent);
    }
    return g;
}

std::vector<double> criticality(const DependencyGraph& graph, bool transitive) {
    const int n = graph.node_count;
    if (n <= 0) throw std::invalid_argument("dependency graph has no nodes");
    std::vector<std::vector<int>> adj(n);
    for (auto [producer, dependent] : graph.edges) {
        if (producer < 0 || producer >= n || dependent < 0 || dependent >= n)
            throw std::invalid_argument("dependency edge references unknown task");
        adj[producer].push_back(dependent);
    }

    // cycle check: iterative DFS with colors
    std::vector<int> color(n, 0);  // 0 white, 1 on stack, 2 done
    for (int start = 0; start < n; ++start) {
        if (color[start] != 0) continue;
        std::vector<std::pair<int, size_t>> stack{{start, 0}};
        color[start] = 1;
        while (!stack.empty()) {
            auto& [node, next] = stack.back();
            if (next < adj[node].size()) {
                int child = adj[node][next++];
                if (color[child] == 1)
                    throw std::invalid_argument("dependency graph contains a cycle");
                if (color[child] == 0) {
                    color[child] = 1;
                    stack.emplace_back(child, 0);
                }
            } else {
                color[node] = 2;
                stack.pop_back();
            }
        }
    }

    std::vector<double> zeta(n, 0.0);
    if (!transitive) {
        for (int i = 0; i < n; ++i)
            zeta[i] = static_cast<double>(adj[i].size()) / n;
        return zeta;
    }
    for (int i = 0; i < n; ++i) {
        std::vector<uint8_t> seen(n, 0);
        std::vector<int> stack{i};
        seen[i] = 1;
        int count = 0;
        while (!stack.empty()) {
            int node = stack.back();
            stack.pop_back();
            for (int child : adj[node]) {
                if (!seen[child]) {
                    seen[child] = 1;
                    ++count;
                    stack.push_back(child);
                }
            }
        }
        zeta[i] = static_cast<double>(count) / n;
    }
    return zeta;
}

TaskTimingState TaskTimingState::at_phase(uint64_t exec_cycles, uint64_t idle_cycles,
                                          uint64_t offset) {
    if (exec_cycles == 0) throw std::invalid_argument("exec_cycles must be >= 1");
    TaskTimingState s;
    s.exec_cycles = exec_cycles;
    s.idle_cycles = idle_cycles;
    uint64_t pos = offset % s.period();
    if (pos < exec_cycles) {
        s.busy = true;
        s.partial_exec = pos;
    } else {
        s.busy = false;
        s.partial_idle = pos - exec_cycles;
    }
    init_status(s);
    return s;
}

uint64_t init_status(TaskTimingState& s) {
    if (s.busy) {
        uint64_t remaining = s.exec_cycles > s.partial_exec
                                 ? s.exec_cycles - s.partial_exec
                                 : 0;
        s.status = remaining + s.idle_cycles;
    } else {
        s.status = s.idle_cycles > s.partial_idle ? s.idle_cycles - s.partial_idle : 0;
    }
    return s.status;
}

void tick(TaskTimingState& s) {
    if (s.status == 0)
        s.status = s.period();
    else
        --s.status;

    if (s.idle_cycles == 0) {
        s.partial_exec = (s.partial_exec + 1) % s.exec_cycles;
        s.busy = true;
        return;
    }
    if (s.busy) {
        if (++s.partial_exec == s.exec_cycles) {
            s.busy = false;
            s.partial_exec = 0;
            s.partial_idle = 0;
        }
    } else {
        if (++s.partial_idle == s.idle_cycles) {
            s.busy = true;
            s.partial_idle = 0;
            s.partial_exec = 0;
        }
    }
}

void advance(TaskTimingState& s, uint64_t cycles) {
    if (cycles == 0) return;

    // status register: counts down to 0, dwells one tick, reloads to period
    const uint64_t reload = s.period();
    if (cycles <= s.status) {
        s.status -= cycles;
    } else {
        uint64_t past_zero = cycles - s.status - 1;  // ticks after the reload tick
        s.status = reload - past_zero % (reload + 1);
    }

    // phase counters are purely periodic
    uint64_t pos = s.busy ? s.partial_exec : s.exec_cycles + s.partial_idle;
    pos = (pos + cycles) % reload;
    if (pos < s.exec_cycles) {
        s.busy = true;
        s.partial_exec = pos;
        s.partial_idle = 0;
    } else {
        s.busy = false;
        s.partial_idle = pos - s.exec_cycles;
        s.partial_exec = 0;
    }
}

uint64_t busy_cycles_during(const TaskTimingState& s, uint64_t cycles) {
    if (s.idle_cycles == 0) return cycles;
    const uint64_t period = s.period();
    const uint64_t exec = s.exec_cycles;
    uint64_t pos = s.busy ? s.partial_exec : s.exec_cycles + s.partial_idle;
    // busy cycles in [0, x) counted from the execution-phase origin
    auto busy_before = [&](uint64_t x) {
        return (x / period) * exec + std::min(x % period, exec);
    };
    return busy_before(pos + cycles) - busy_before(pos);
}

std::optional<uint64_t> priority(uint64_t status,
                                 uint64_t correction_plus_reconfig_cycles) {
    if (correction_plus_reconfig_cycles > status) return std::nullopt;
    return status - correction_plus_reconfig_cycles;
}

double final_priority(uint64_t p, const PrioritySpec& spec, double zeta,
                      uint64_t exec_cycles) {
    if (spec.total_frames == 0) throw std::invalid_argument("total frames must be > 0");
    // zero slack saturates at 1/0.5 instead of dividing by zero
    double inv_p = p == 0 ? 2.0 : 1.0 / static_cast<double>(p);
    double area = static_cast<double>(spec.frames_in_task) /
                  static_cast<double>(spec.total_frames);
    return spec.w_a * inv_p + spec.w_b * area + spec.w_c * zeta +
           spec.w_d * static_cast<double>(exec_cycles);
}

std::optional<int> select(std::span<const Candidate> candidates) {
    if (candidates.empty()) return std::nullopt;
    const Candidate* best = &candidates[0];
    for (const Candidate& c : candidates.subspan(1)) {
        if (c.fp > best->fp ||
            (c.fp == best->fp &&
             (c.status < best->status ||
              (c.status == best->status && c.task < best->task))))
            best = &c;
    }
    return best->task;
}

}  // namespace cmedac
