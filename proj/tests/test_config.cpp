#include <doctest.h>

#include <sstream>

#include "cmedac/config.hpp"
#include "cmedac/detector.hpp"

using namespace cmedac;

namespace {

FullConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

}  // namespace

TEST_CASE("a full document parses into the expected fields") {
    FullConfig cfg = parse(R"(
# comment
[memory]
tasks = 3
frames_per_task = 4
rows = 8
cols = 16
fill = zero
content_seed = 11
default_exec = 500
default_idle = 250

[tasks]
task 1 exec=900 idle=100 frames=2 phase=30
dep 0 1
dep 0 2

[faults]
model = adjacent-burst
burst_length = 4

[weights]
w_a = 0.5
w_b = 0.25
w_c = 0.125
w_d = 0.1

[timing]
clock_mhz = 200
read_cycles_per_frame = 5
write_cycles_per_frame = 6
ec_cycles_per_frame = 2

[campaign]
runs = 17
seed = 99
scrub_mode = periodic
scrub_period = 12345
transitive_criticality = false
)");
    CHECK(cfg.memory.tasks == 3);
    CHECK(cfg.memory.geometry.rows == 8);
    CHECK(cfg.memory.fill == FillKind::Zero);
    REQUIRE(cfg.memory.overrides.size() == 1);
    CHECK(cfg.memory.overrides[0].id == 1);
    CHECK(*cfg.memory.overrides[0].exec_cycles == 900);
    CHECK(*cfg.memory.overrides[0].frames == 2);
    CHECK(cfg.memory.dep_edges.size() == 2);
    REQUIRE(cfg.fault.has_value());
    CHECK(cfg.fault->kind == FaultKind::AdjacentBurst);
    CHECK(cfg.fault->burst_length == 4);
    CHECK(cfg.weights.a == doctest::Approx(0.5));
    CHECK(cfg.weights.d == doctest::Approx(0.1));
    CHECK(cfg.timing.clock_period_s == doctest::Approx(5e-9));
    CHECK(cfg.timing.write_cycles_per_frame == 6);
    CHECK(cfg.campaign.runs == 17);
    CHECK(cfg.campaign.scrub_mode == ScrubMode::Periodic);
    CHECK(cfg.campaign.scrub_period == 12345);
    CHECK_FALSE(cfg.campaign.transitive_criticality);
}

TEST_CASE("defaults hold when sections are omitted") {
    FullConfig cfg = parse("[memory]\ntasks = 2\nframes_per_task = 2\nrows = 4\ncols = 4\n");
    CHECK_FALSE(cfg.fault.has_value());
    CHECK(cfg.weights.a == doctest::Approx(0.25));
    CHECK(cfg.campaign.runs == 1);
    CHECK(cfg.timing.read_cycles_per_frame == 10);
}

TEST_CASE("seconds-valued durations convert to whole cycles, rounding up") {
    FullConfig cfg = parse(
        "[timing]\nclock_mhz = 100\n"
        "[memory]\ntasks = 1\nframes_per_task = 1\nrows = 2\ncols = 2\n"
        "default_exec_s = 0.0000105\n");  // 10.5 us at 10 ns -> 1050 cycles
    CHECK(cfg.memory.default_exec == 1050);
}

TEST_CASE("malformed documents are rejected") {
    CHECK_THROWS_AS(parse("tasks = 1\n"), ConfigError);               // no section
    CHECK_THROWS_AS(parse("[memory\ntasks = 1\n"), ConfigError);      // bad header
    CHECK_THROWS_AS(parse("[memory]\nbogus = 1\n"), ConfigError);     // unknown key
    CHECK_THROWS_AS(parse("[bogus]\nx = 1\n"), ConfigError);          // unknown section
    CHECK_THROWS_AS(parse("[memory]\ntasks\n"), ConfigError);         // no '='
    CHECK_THROWS_AS(parse("[memory]\ntasks = -3\n"), ConfigError);    // negative count
    CHECK_THROWS_AS(parse("[memory]\ntasks = 2\ntasks = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse("[memory]\ntasks = 0\nframes_per_task = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse("[weights]\nw_a = 1.5\n"), ConfigError);    // out of range
    CHECK_THROWS_AS(parse("[weights]\nw_b = -0.1\n"), ConfigError);
    CHECK_THROWS_AS(parse("[faults]\nmodel = cosmic\n"), ConfigError);
    CHECK_THROWS_AS(parse("[timing]\nclock_mhz = 0\n"), ConfigError);
    CHECK_THROWS_AS(
        parse("[memory]\ntasks = 2\nframes_per_task = 1\nrows = 2\ncols = 2\n"
              "[tasks]\ntask 7 exec=1\n"),
        ConfigError);  // override out of range
}

TEST_CASE("zero fill produces the all-zero task digests") {
    FullConfig cfg = parse(
        "[memory]\ntasks = 2\nframes_per_task = 2\nrows = 4\ncols = 8\nfill = zero\n");
    ConfigMemory mem = build_memory(cfg.memory);
    std::vector<uint8_t> zeros(2 * 4, 0);
    CHECK(mem.task_digest(0) == sha3_512(zeros));
    CHECK(mem.task_digest(1) == sha3_512(zeros));
}

TEST_CASE("random fill is reproducible from the content seed") {
    FullConfig cfg = parse(
        "[memory]\ntasks = 3\nframes_per_task = 2\nrows = 8\ncols = 8\n"
        "content_seed = 5\n");
    ConfigMemory a = build_memory(cfg.memory);
    ConfigMemory b = build_memory(cfg.memory);
    CHECK(a == b);

    cfg.memory.content_seed = 6;
    ConfigMemory c = build_memory(cfg.memory);
    CHECK(a != c);
}

TEST_CASE("frame-count overrides shape the padding") {
    FullConfig cfg = parse(
        "[memory]\ntasks = 2\nframes_per_task = 3\nrows = 2\ncols = 2\n"
        "[tasks]\ntask 1 frames=5\n");
    ConfigMemory mem = build_memory(cfg.memory);
    CHECK(mem.frames_per_task() == 5);
    CHECK(mem.task(0).real_count == 3);
    CHECK(mem.task(1).real_count == 5);
}

TEST_CASE("scenario assembly wires everything together") {
    FullConfig cfg = parse(R"(
[memory]
tasks = 3
frames_per_task = 2
rows = 4
cols = 8
content_seed = 2

[tasks]
dep 0 1
dep 1 2

[faults]
model = single-bit

[campaign]
runs = 5
seed = 31
)");
    Scenario sc = build_scenario(cfg, Exec::Serial);
    CHECK(sc.memory.task_count() == 3);
    CHECK(golden_shape_matches(sc.golden, sc.memory));
    CHECK(sc.deps.edges.size() == 2);

    auto metrics = run_campaign(sc, Exec::Serial);
    CHECK(metrics.runs.size() == 5);
    for (const auto& r : metrics.runs) {
        CHECK(r.faulty_tasks == 1);
        CHECK(r.corrected == 1);
    }
}

TEST_CASE("cyclic dependency documents fail at scenario build") {
    FullConfig cfg = parse(
        "[memory]\ntasks = 2\nframes_per_task = 1\nrows = 2\ncols = 2\n"
        "[tasks]\ndep 0 1\ndep 1 0\n");
    CHECK_THROWS_AS(build_scenario(cfg, Exec::Serial), ConfigError);
}

TEST_CASE("the checked-in example configs load and validate") {
    FullConfig paper = load_config(std::string(CMEDAC_CONFIG_DIR) + "/paper_scenario.cfg");
    CHECK(paper.memory.tasks == 10);
    CHECK(paper.memory.frames_per_task == 100);
    CHECK(paper.memory.geometry.rows == 101);
    CHECK(paper.memory.geometry.cols == 32);
    Scenario sc = build_scenario(paper, Exec::Parallel);
    CHECK(redundancy_bits(sc.memory).proposed == 360640);
    CHECK(redundancy_bits(sc.memory).scrubbing == 3232000);
    auto zeta = criticality(sc.deps);
    CHECK(zeta[0] == doctest::Approx(0.9));

    FullConfig small = load_config(std::string(CMEDAC_CONFIG_DIR) + "/small.cfg");
    Scenario sc2 = build_scenario(small, Exec::Serial);
    CHECK(sc2.memory.task_count() == 4);
}
