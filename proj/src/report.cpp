#include "cmedac/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cmedac {

namespace {
using ordered_json = nlohmann::ordered_json;

ordered_json run_to_json(const RunRecord& r) {
    ordered_json j;
    j["run"] = r.run;
    j["seed"] = r.seed;
    j["injected_flips"] = r.injected_flips;
    j["faulty_frames"] = r.faulty_frames;
    j["faulty_tasks"] = r.faulty_tasks;
    j["corrected"] = r.corrected;
    j["uncorrectable"] = r.uncorrectable;
    j["unschedulable"] = r.unschedulable;
    j["clean_tasks"] = r.clean_tasks;
    j["attempts"] = r.attempts;
    j["detection_cycles"] = r.detection_cycles;
    j["correction_cycles"] = r.correction_cycles;
    j["total_cycles"] = r.total_cycles;
    j["frames_downloaded"] = r.frames_downloaded;
    j["exposure_cycles"] = r.exposure_cycles;
    j["memory_clean"] = r.memory_clean;
    return j;
}

RunRecord run_from_json(const ordered_json& j) {
    RunRecord r;
    r.run = j.at("run").get<uint64_t>();
    r.seed = j.at("seed").get<uint64_t>();
    r.injected_flips = j.at("injected_flips").get<uint64_t>();
    r.faulty_frames = j.at("faulty_frames").get<uint64_t>();
    r.faulty_tasks = j.at("faulty_tasks").get<uint32_t>();
    r.corrected = j.at("corrected").get<uint32_t>();
    r.uncorrectable = j.at("uncorrectable").get<uint32_t>();
    r.unschedulable = j.at("unschedulable").get<uint32_t>();
    r.clean_tasks = j.at("clean_tasks").get<uint32_t>();
    r.attempts = j.at("attempts").get<uint32_t>();
    r.detection_cycles = j.at("detection_cycles").get<uint64_t>();
    r.correction_cycles = j.at("correction_cycles").get<uint64_t>();
    r.total_cycles = j.at("total_cycles").get<uint64_t>();
    r.frames_downloaded = j.at("frames_downloaded").get<uint64_t>();
    r.exposure_cycles = j.at("exposure_cycles").get<uint64_t>();
    r.memory_clean = j.at("memory_clean").get<bool>();
    return r;
}
}  // namespace

void write_metrics_jsonl(std::ostream& out, const CampaignMetrics& metrics) {
    ordered_json header;
    header["record"] = "campaign";
    header["tasks"] = metrics.tasks;
    header["frames_per_task"] = metrics.frames_per_task;
    header["total_frames"] = metrics.total_frames;
    header["redundancy_proposed_bits"] = metrics.redundancy.proposed;
    header["redundancy_scrubbing_bits"] = metrics.redundancy.scrubbing;
    header["redundancy_detection_only_bits"] = metrics.redundancy.detection_only;
    out << header.dump() << "\n";
    for (const RunRecord& r : metrics.runs) out << run_to_json(r).dump() << "\n";
}

void write_metrics_jsonl_file(const std::filesystem::path& path,
                              const CampaignMetrics& metrics) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    write_metrics_jsonl(out, metrics);
}

CampaignMetrics read_metrics_jsonl(std::istream& in) {
    CampaignMetrics m;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ordered_json j = ordered_json::parse(line);
        if (j.contains("record") && j["record"] == "campaign") {
            m.tasks = j.at("tasks").get<uint64_t>();
            m.frames_per_task = j.at("frames_per_task").get<uint64_t>();
            m.total_frames = j.at("total_frames").get<uint64_t>();
            m.redundancy.proposed = j.at("redundancy_proposed_bits").get<uint64_t>();
            m.redundancy.scrubbing = j.at("redundancy_scrubbing_bits").get<uint64_t>();
            m.redundancy.detection_only =
                j.at("redundancy_detection_only_bits").get<uint64_t>();
            have_header = true;
        } else {
            m.runs.push_back(run_from_json(j));
        }
    }
    if (!have_header && m.runs.empty())
        throw std::runtime_error("metrics file holds no records");
    return m;
}

CampaignMetrics read_metrics_jsonl_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open metrics file: " + path.string());
    return read_metrics_jsonl(in);
}

namespace {

struct Aggregate {
    uint64_t runs = 0;
    uint64_t faulty = 0, corrected = 0, uncorrectable = 0, unschedulable = 0;
    uint64_t frames_downloaded = 0;
    uint64_t det_sum = 0, det_max = 0;
    uint64_t cor_sum = 0, cor_max = 0;
    uint64_t exp_sum = 0, exp_max = 0;

    explicit Aggregate(const CampaignMetrics& m) {
        runs = m.runs.size();
        for (const RunRecord& r : m.runs) {
            faulty += r.faulty_tasks;
            corrected += r.corrected;
            uncorrectable += r.uncorrectable;
            unschedulable += r.unschedulable;
            frames_downloaded += r.frames_downloaded;
            det_sum += r.detection_cycles;
            det_max = std::max(det_max, r.detection_cycles);
            cor_sum += r.correction_cycles;
            cor_max = std::max(cor_max, r.correction_cycles);
            exp_sum += r.exposure_cycles;
            exp_max = std::max(exp_max, r.exposure_cycles);
        }
    }

    double mean(uint64_t sum) const {
        return runs == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(runs);
    }
    double success_rate() const {
        return faulty == 0 ? 1.0
                           : static_cast<double>(corrected) / static_cast<double>(faulty);
    }
};

std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace

void write_summary_csv(std::ostream& out, const CampaignMetrics& metrics) {
    const Aggregate a(metrics);
    out << "runs,faulty_tasks,corrected,uncorrectable,unschedulable,success_rate,"
           "mean_detection_cycles,max_detection_cycles,mean_correction_cycles,"
           "max_correction_cycles,mean_exposure_cycles,max_exposure_cycles,"
           "frames_downloaded,redundancy_proposed_bits,redundancy_scrubbing_bits,"
           "redundancy_detection_only_bits\n";
    out << a.runs << "," << a.faulty << "," << a.corrected << "," << a.uncorrectable
        << "," << a.unschedulable << "," << fixed3(a.success_rate()) << ","
        << fixed3(a.mean(a.det_sum)) << "," << a.det_max << ","
        << fixed3(a.mean(a.cor_sum)) << "," << a.cor_max << ","
        << fixed3(a.mean(a.exp_sum)) << "," << a.exp_max << "," << a.frames_downloaded
        << "," << metrics.redundancy.proposed << "," << metrics.redundancy.scrubbing
        << "," << metrics.redundancy.detection_only << "\n";
}

void write_summary_csv_file(const std::filesystem::path& path,
                            const CampaignMetrics& metrics) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    write_summary_csv(out, metrics);
}

void write_redundancy_curve(std::ostream& out, uint64_t task_count_from,
                            uint64_t task_count_to, uint64_t frames_per_task,
                            FrameGeometry geometry) {
    out << "# tasks proposed_bits scrubbing_bits\n";
    for (uint64_t n = task_count_from; n <= task_count_to; ++n) {
        RedundancyBits r = redundancy_bits(n, frames_per_task, geometry);
        out << n << " " << r.proposed << " " << r.scrubbing << "\n";
    }
}

void write_latency_curve(std::ostream& out, const CampaignMetrics& metrics,
                         const TimingModel& timing) {
    const uint64_t scrub_cycles = metrics.total_frames * timing.write_cycles_per_frame;
    std::vector<const RunRecord*> rows;
    rows.reserve(metrics.runs.size());
    for (const RunRecord& r : metrics.runs) rows.push_back(&r);
    std::sort(rows.begin(), rows.end(), [](const RunRecord* x, const RunRecord* y) {
        return std::tie(x->faulty_frames, x->run) < std::tie(y->faulty_frames, y->run);
    });
    out << "# faulty_frames correction_cycles scrub_download_cycles\n";
    for (const RunRecord* r : rows)
        out << r->faulty_frames << " " << r->correction_cycles << " " << scrub_cycles
            << "\n";
}

std::string render_report(const CampaignMetrics& metrics) {
    std::ostringstream os;
    if (metrics.runs.empty()) {
        os << "no runs recorded\n";
        return os.str();
    }
    const Aggregate a(metrics);
    os << "campaign runs:            " << a.runs << "\n";
    os << "faulty tasks seen:        " << a.faulty << "\n";
    os << "corrected:                " << a.corrected << "\n";
    os << "uncorrectable:            " << a.uncorrectable;
    if (a.unschedulable) os << " (" << a.unschedulable << " never fit a slack window)";
    os << "\n";
    os << "correction success rate:  " << fixed3(a.success_rate()) << "\n";
    os << "detection cycles:         mean " << fixed3(a.mean(a.det_sum)) << ", max "
       << a.det_max << "\n";
    os << "correction cycles:        mean " << fixed3(a.mean(a.cor_sum)) << ", max "
       << a.cor_max << "\n";
    os << "exposure cycles:          mean " << fixed3(a.mean(a.exp_sum)) << ", max "
       << a.exp_max << "\n";
    os << "frames downloaded:        " << a.frames_downloaded << "\n";
    os << "redundant bits:           proposed " << metrics.redundancy.proposed
       << " vs scrubbing " << metrics.redundancy.scrubbing << " (detection-only "
       << metrics.redundancy.detection_only << ")\n";
    return os.str();
}

}  // namespace cmedac
