#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "reactgen/motion.hpp"
#include "reactgen/rng.hpp"

namespace reactgen {

// Paired two-person interaction: the observed action, the responding reaction,
// their frame-0 world placements, a class label and interaction captions.
struct InteractionSample {
  MotionSequence action;    // world space
  MotionSequence reaction;  // world space, same N_f and fps
  SpaceState action_space;
  SpaceState reaction_space;
  int label = 0;
  std::vector<std::string> captions;
  uint64_t seed = 0;
  // Motion attributes the captions mention (class-specific variant, tempo,
  // start-distance category). Kept so evaluation code can audit captions.
  int variant = 0;   // e.g. right/left hand, deep/slight bow, circle direction
  int tempo = 0;     // 0 slow, 1 fast
  int dist_cat = 0;  // 0 close, 1 medium, 2 far
};

namespace synth {

struct ClassInfo {
  int id;
  std::string name;
};

// The built-in interaction vocabulary (8 classes, mix of symmetric and
// asymmetric interactions).
const std::vector<ClassInfo>& classes();
int num_classes();
const std::string& class_name(int class_id);
int class_id(const std::string& name);  // throws on unknown name

// Deterministic procedural sample: pure function of (class_id, seed, n_frames).
InteractionSample generate(int class_id, uint64_t seed, int n_frames, int fps = 30);

struct ClipConfig {
  int min_frames = 16;
  int max_frames = 0;  // 0 means up to the full length
};

// Clips action and reaction over one shared random frame window; label and
// captions are preserved, space states recomputed for the new frame 0.
InteractionSample random_clip(const InteractionSample& sample, Rng& rng, ClipConfig cfg = {});

// On-disk layout: <dir>/action.rgmo, <dir>/reaction.rgmo, <dir>/meta.txt.
void save_sample(const std::filesystem::path& dir, const InteractionSample& sample);
InteractionSample load_sample(const std::filesystem::path& dir);

struct DatasetConfig {
  int samples_per_class = 40;
  uint64_t seed = 0;
  int min_frames = 64;
  int max_frames = 96;
  int fps = 30;
};

// Generates the synthetic corpus under out_dir/{train,val,test}/<sample>/ and
// writes an index file per split. Returns the number of samples written.
int build_dataset(const std::filesystem::path& out_dir, const DatasetConfig& cfg);

// Sample directories listed in <data_dir>/<split>/index.txt.
std::vector<std::filesystem::path> list_samples(const std::filesystem::path& data_dir,
                                                const std::string& split);
std::vector<InteractionSample> load_split(const std::filesystem::path& data_dir,
                                          const std::string& split);

}  // namespace synth
}  // namespace reactgen
