#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "cmedac/sim_engine.hpp"

namespace cmedac {

// One JSON object per run. Field order and number formatting are fixed so a
// given (config, seed) pair always produces byte-identical files.
void write_metrics_jsonl(std::ostream& out, const CampaignMetrics& metrics);
void write_metrics_jsonl_file(const std::filesystem::path& path,
                              const CampaignMetrics& metrics);

CampaignMetrics read_metrics_jsonl(std::istream& in);
CampaignMetrics read_metrics_jsonl_file(const std::filesystem::path& path);

// Aggregate one-row CSV.
void write_summary_csv(std::ostream& out, const CampaignMetrics& metrics);
void write_summary_csv_file(const std::filesystem::path& path,
                            const CampaignMetrics& metrics);

// Plot data, plain columns. Redundancy curve sweeps the task count at fixed
// frames-per-task and geometry; the latency curve emits one point per run
// with the whole-image scrub download time alongside.
void write_redundancy_curve(std::ostream& out, uint64_t task_count_from,
                            uint64_t task_count_to, uint64_t frames_per_task,
                            FrameGeometry geometry);
void write_latency_curve(std::ostream& out, const CampaignMetrics& metrics,
                         const TimingModel& timing);

// Human-readable aggregate of one or more metrics files.
std::string render_report(const CampaignMetrics& metrics);

}  // namespace cmedac
