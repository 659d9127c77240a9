#include "cmedac/golden_io.hpp"

#include <fstream>
#include <sstream>

namespace cmedac {

void write_golden(std::ostream& out, const GoldenStore& store) {
    out << "cmedac-golden v1\n";
    out << "geometry " << store.geometry.rows << " " << store.geometry.cols << "\n";
    out << "tasks " << store.hashes.size() << "\n";
    out << "frames_per_task " << store.vp.size() << "\n";
    for (size_t z = 0; z < store.hashes.size(); ++z)
        out << "hash " << z << " " << store.hashes[z].to_hex() << "\n";
    for (size_t z = 0; z < store.hp.size(); ++z)
        out << "hp " << z << " " << store.hp[z].to_hex() << "\n";
    for (size_t k = 0; k < store.vp.size(); ++k)
        out << "vp " << k << " " << store.vp[k].to_hex() << "\n";
}

void write_golden_file(const std::filesystem::path& path, const GoldenStore& store) {
    std::ofstream out(path);
    if (!out) throw GoldenFileError("cannot open for writing: " + path.string());
    write_golden(out, store);
    if (!out) throw GoldenFileError("write failed: " + path.string());
}

GoldenStore read_golden(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "cmedac-golden v1")
        throw GoldenFileError("missing or unsupported golden-store header");

    GoldenStore store;
    size_t n_tasks = 0, n_frames = 0;
    std::vector<bool> seen_hash, seen_hp, seen_vp;
    bool have_geometry = false, have_counts = false;

    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "geometry") {
            ls >> store.geometry.rows >> store.geometry.cols;
            if (!ls || store.geometry.frame_bits() == 0)
                throw GoldenFileError("bad geometry line");
            have_geometry = true;
        } else if (key == "tasks") {
            ls >> n_tasks;
            if (!ls || n_tasks == 0) throw GoldenFileError("bad tasks line");
            store.hashes.resize(n_tasks);
            store.hp.resize(n_tasks);
            seen_hash.assign(n_tasks, false);
            seen_hp.assign(n_tasks, false);
            have_counts = n_frames > 0;
        } else if (key == "frames_per_task") {
            ls >> n_frames;
            if (!ls || n_frames == 0) throw GoldenFileError("bad frames_per_task line");
            store.vp.resize(n_frames);
            seen_vp.assign(n_frames, false);
            have_counts = n_tasks > 0;
        } else if (key == "hash" || key == "hp" || key == "vp") {
            if (!have_geometry || !have_counts)
                throw GoldenFileError("data line before geometry/counts");
            size_t idx;
            std::string hex;
            ls >> idx >> hex;
            if (!ls) throw GoldenFileError("malformed line: " + line);
            try {
                if (key == "hash") {
                    if (idx >= n_tasks) throw GoldenFileError("hash index out of range");
                    store.hashes[idx] = Digest512::from_hex(hex);
                    seen_hash[idx] = true;
                } else if (key == "hp") {
                    if (idx >= n_tasks) throw GoldenFileError("hp index out of range");
                    store.hp[idx] = Frame::from_hex(store.geometry, hex);
                    seen_hp[idx] = true;
                } else {
                    if (idx >= n_frames) throw GoldenFileError("vp index out of range");
                    store.vp[idx] = Frame::from_hex(store.geometry, hex);
                    seen_vp[idx] = true;
                }
            } catch (const std::invalid_argument& e) {
                throw GoldenFileError(std::string(e.what()) + " in line: " + line);
            }
        } else {
            throw GoldenFileError("unknown key: " + key);
        }
    }
    if (!have_geometry || n_tasks == 0 || n_frames == 0)
        throw GoldenFileError("golden store lacks geometry or counts");
    auto all = [](const std::vector<bool>& v) {
        for (bool b : v)
            if (!b) return false;
        return true;
    };
    if (!all(seen_hash) || !all(seen_hp) || !all(seen_vp))
        throw GoldenFileError("golden store is incomplete");
    return store;
}

GoldenStore read_golden_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw GoldenFileError("cannot open: " + path.string());
    return read_golden(in);
}

}  // namespace cmedac
