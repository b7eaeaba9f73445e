#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

namespace reactgen {

// Default 22-joint skeleton, SMPL-subset ordering. The synthetic generator and
// the feature extractor both assume this layout.
namespace joint {
constexpr int kPelvis = 0;
constexpr int kLeftHip = 1;
constexpr int kRightHip = 2;
constexpr int kSpine1 = 3;
constexpr int kLeftKnee = 4;
constexpr int kRightKnee = 5;
constexpr int kSpine2 = 6;
constexpr int kLeftAnkle = 7;
constexpr int kRightAnkle = 8;
constexpr int kSpine3 = 9;
constexpr int kLeftFoot = 10;
constexpr int kRightFoot = 11;
constexpr int kNeck = 12;
constexpr int kLeftCollar = 13;
constexpr int kRightCollar = 14;
constexpr int kHead = 15;
constexpr int kLeftShoulder = 16;
constexpr int kRightShoulder = 17;
constexpr int kLeftElbow = 18;
constexpr int kRightElbow = 19;
constexpr int kLeftWrist = 20;
constexpr int kRightWrist = 21;
constexpr int kCount = 22;

// parent[j] in the kinematic chain, -1 for the root.
extern const std::array<int, kCount> kParent;
}  // namespace joint

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

// Absolute ground-plane placement of a person at one instant: pelvis (x, z)
// and facing angle r about the vertical axis, radians wrapped to [-pi, pi).
// r = 0 faces +z, positive r turns toward +x.
struct SpaceState {
  double x = 0.0;
  double z = 0.0;
  double r = 0.0;
};

double wrap_angle(double a);

// Per-frame world-space skeleton joints at a fixed frame rate.
class MotionSequence {
 public:
  MotionSequence() = default;
  MotionSequence(int n_frames, int n_joints, int fps);

  int n_frames() const { return n_frames_; }
  int n_joints() const { return n_joints_; }
  int fps() const { return fps_; }

  double& at(int frame, int j, int coord) {
    return data_[(static_cast<size_t>(frame) * n_joints_ + j) * 3 + coord];
  }
  double at(int frame, int j, int coord) const {
    return data_[(static_cast<size_t>(frame) * n_joints_ + j) * 3 + coord];
  }
  Vec3 joint_pos(int frame, int j) const {
    return {at(frame, j, 0), at(frame, j, 1), at(frame, j, 2)};
  }
  void set_joint(int frame, int j, const Vec3& p) {
    at(frame, j, 0) = p.x;
    at(frame, j, 1) = p.y;
    at(frame, j, 2) = p.z;
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool operator==(const MotionSequence& o) const = default;

 private:
  int n_frames_ = 0;
  int n_joints_ = 0;
  int fps_ = 30;
  std::vector<double> data_;  // frame-major [N_f][J][3]
};

// Offsets of the feature blocks inside one feature row:
// [positions 3J | velocities 3J | rotations 6(J-1) | foot contact 4].
struct FeatureLayout {
  int n_joints = joint::kCount;
  int pos_offset = 0;
  int vel_offset = 0;
  int rot_offset = 0;
  int contact_offset = 0;
  int dim = 0;

  static FeatureLayout for_joints(int n_joints);
};

struct FeatureSequence {
  FeatureLayout layout;
  int n_frames = 0;
  std::vector<double> data;  // [N_f][layout.dim]

  double* frame(int i) { return data.data() + static_cast<size_t>(i) * layout.dim; }
  const double* frame(int i) const { return data.data() + static_cast<size_t>(i) * layout.dim; }
  int dim() const { return layout.dim; }
};

// Facing angle of the skeleton at `frame`, from the hip lateral axis projected
// to the ground plane. Throws "degenerate pose" when the axis vanishes.
double facing_angle(const MotionSequence& seq, int frame);

// Ground-plane placement (pelvis x/z + facing) at an arbitrary frame.
SpaceState space_state_at(const MotionSequence& seq, int frame);

// Rigid-transforms the sequence so frame 0 has its pelvis at (x=0, z=0) facing
// +z. Returns the transformed sequence and the removed placement. Vertical
// coordinates are untouched.
std::pair<MotionSequence, SpaceState> normalize_egocentric(const MotionSequence& seq);

// Inverse of normalize_egocentric: places an egocentric sequence at `state`.
MotionSequence denormalize(const MotionSequence& seq, const SpaceState& state);

// Continuous features of a normalized sequence; see FeatureLayout.
// Velocity row i is (pos_i - pos_{i-1}) * fps with row 0 zero. Foot contact is
// 1 when the heel/toe joint moved less than `contact_threshold` metres since
// the previous frame.
FeatureSequence compute_features(const MotionSequence& seq, double contact_threshold = 0.05);

// Rebuilds joint positions from the position block of a feature sequence.
MotionSequence motion_from_features(const FeatureSequence& feats, int fps);

// Uniform-stride frame selection (nearest index, no interpolation).
// Throws "upsampling unsupported" when target_fps exceeds the source rate.
MotionSequence resample_fps(const MotionSequence& seq, int target_fps);

// Binary motion file: "RGMO", u32 version, u32 J, u32 N_f, u32 fps, then
// N_f*J*3 little-endian float32, frame-major.
void save_motion(const std::filesystem::path& path, const MotionSequence& seq);
MotionSequence load_motion(const std::filesystem::path& path);

}  // namespace reactgen
