#include "reactgen/motion.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "reactgen/io.hpp"

namespace reactgen {

namespace joint {
const std::array<int, kCount> kParent = {
    -1,  // pelvis
    0,   // left hip
    0,   // right hip
    0,   // spine1
    1,   // left knee
    2,   // right knee
    3,   // spine2
    4,   // left ankle
    5,   // right ankle
    6,   // spine3
    7,   // left foot
    8,   // right foot
    9,   // neck
    9,   // left collar
    9,   // right collar
    12,  // head
    13,  // left shoulder
    14,  // right shoulder
    16,  // left elbow
    17,  // right elbow
    18,  // left wrist
    19,  // right wrist
};
}  // namespace joint

double wrap_angle(double a) {
  const double two_pi = 2.0 * M_PI;
  double w = a - two_pi * std::floor((a + M_PI) / two_pi);
  // floor rounding can land exactly on +pi; fold it back.
  if (w >= M_PI) w -= two_pi;
  return w;
}

MotionSequence::MotionSequence(int n_frames, int n_joints, int fps)
    : n_frames_(n_frames), n_joints_(n_joints), fps_(fps) {
  if (n_frames < 1) throw std::invalid_argument("MotionSequence needs at least one frame");
  if (n_joints < 2) throw std::invalid_argument("MotionSequence needs at least two joints");
  data_.assign(static_cast<size_t>(n_frames) * n_joints * 3, 0.0);
}

FeatureLayout FeatureLayout::for_joints(int n_joints) {
  FeatureLayout l;
  l.n_joints = n_joints;
  l.pos_offset = 0;
  l.vel_offset = 3 * n_joints;
  l.rot_offset = 6 * n_joints;
  l.contact_offset = 6 * n_joints + 6 * (n_joints - 1);
  l.dim = l.contact_offset + 4;
  return l;
}

double facing_angle(const MotionSequence& seq, int frame) {
  const Vec3 lh = seq.joint_pos(frame, joint::kLeftHip);
  const Vec3 rh = seq.joint_pos(frame, joint::kRightHip);
  const double lx = lh.x - rh.x;
  const double lz = lh.z - rh.z;
  if (std::sqrt(lx * lx + lz * lz) < 1e-9) throw std::runtime_error("degenerate pose");
  // Forward is the hip lateral axis rotated +90 degrees in the ground plane.
  const double fx = -lz;
  const double fz = lx;
  return std::atan2(fx, fz);
}

SpaceState space_state_at(const MotionSequence& seq, int frame) {
  const Vec3 pelvis = seq.joint_pos(frame, joint::kPelvis);
  return {pelvis.x, pelvis.z, wrap_angle(facing_angle(seq, frame))};
}

std::pair<MotionSequence, SpaceState> normalize_egocentric(const MotionSequence& seq) {
  if (seq.n_frames() < 1) throw std::invalid_argument("empty sequence");
  const SpaceState state = space_state_at(seq, 0);
  const double c = std::cos(state.r);
  const double s = std::sin(state.r);
  MotionSequence out = seq;
  for (int f = 0; f < seq.n_frames(); ++f) {
    for (int j = 0; j < seq.n_joints(); ++j) {
      const double dx = seq.at(f, j, 0) - state.x;
      const double dz = seq.at(f, j, 2) - state.z;
      // Rotate by -r so the frame-0 facing lands on +z.
      out.at(f, j, 0) = dx * c - dz * s;
      out.at(f, j, 2) = dx * s + dz * c;
    }
  }
  return {out, state};
}

MotionSequence denormalize(const MotionSequence& seq, const SpaceState& state) {
  if (!std::isfinite(state.x) || !std::isfinite(state.z) || !std::isfinite(state.r))
    throw std::invalid_argument("non-finite space state");
  const double c = std::cos(state.r);
  const double s = std::sin(state.r);
  MotionSequence out = seq;
  for (int f = 0; f < seq.n_frames(); ++f) {
    for (int j = 0; j < seq.n_joints(); ++j) {
      const double x = seq.at(f, j, 0);
      const double z = seq.at(f, j, 2);
      out.at(f, j, 0) = x * c + z * s + state.x;
      out.at(f, j, 2) = -x * s + z * c + state.z;
    }
  }
  return out;
}

namespace {

struct V3 {
  double x, y, z;
};

V3 sub(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

double norm(const V3& v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

V3 normalized(const V3& v, const V3& fallback) {
  const double n = norm(v);
  if (n < 1e-9) return fallback;
  return {v.x / n, v.y / n, v.z / n};
}

V3 cross(const V3& a, const V3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

}  // namespace

FeatureSequence compute_features(const MotionSequence& seq, double contact_threshold) {
  const int J = seq.n_joints();
  const int F = seq.n_frames();
  FeatureSequence out;
  out.layout = FeatureLayout::for_joints(J);
  out.n_frames = F;
  out.data.assign(static_cast<size_t>(F) * out.layout.dim, 0.0);

  const int contact_joints[4] = {joint::kLeftAnkle, joint::kLeftFoot, joint::kRightAnkle,
                                 joint::kRightFoot};

  for (int f = 0; f < F; ++f) {
    double* row = out.frame(f);
    // positions
    for (int j = 0; j < J; ++j)
      for (int c = 0; c < 3; ++c) row[out.layout.pos_offset + 3 * j + c] = seq.at(f, j, c);
    // velocities: fps-scaled first differences, frame 0 zero
    if (f > 0) {
      for (int j = 0; j < J; ++j)
        for (int c = 0; c < 3; ++c)
          row[out.layout.vel_offset + 3 * j + c] =
              (seq.at(f, j, c) - seq.at(f - 1, j, c)) * seq.fps();
    }
    // 6-D rotation per non-root joint: bone direction plus one orthogonal axis
    // of a frame built against the global up vector.
    int slot = 0;
    for (int j = 1; j < J; ++j, ++slot) {
      const int p = joint::kParent[j];
      const V3 d = normalized(sub(seq.joint_pos(f, j), seq.joint_pos(f, p)), {0.0, 1.0, 0.0});
      const V3 up = std::fabs(d.y) > 0.99 ? V3{1.0, 0.0, 0.0} : V3{0.0, 1.0, 0.0};
      const V3 a1 = normalized(cross(up, d), {1.0, 0.0, 0.0});
      double* r6 = row + out.layout.rot_offset + 6 * slot;
      r6[0] = d.x;
      r6[1] = d.y;
      r6[2] = d.z;
      r6[3] = a1.x;
      r6[4] = a1.y;
      r6[5] = a1.z;
    }
    // foot contact from heel/toe displacement since the previous frame
    for (int k = 0; k < 4; ++k) {
      const int j = contact_joints[k];
      double disp = 0.0;
      if (f > 0) {
        disp = norm(sub(seq.joint_pos(f, j), seq.joint_pos(f - 1, j)));
      } else if (F > 1) {
        disp = norm(sub(seq.joint_pos(1, j), seq.joint_pos(0, j)));
      }
      row[out.layout.contact_offset + k] = disp < contact_threshold ? 1.0 : 0.0;
    }
  }
  return out;
}

MotionSequence motion_from_features(const FeatureSequence& feats, int fps) {
  const int J = feats.layout.n_joints;
  MotionSequence out(feats.n_frames, J, fps);
  for (int f = 0; f < feats.n_frames; ++f) {
    const double* row = feats.frame(f);
    for (int j = 0; j < J; ++j)
      for (int c = 0; c < 3; ++c) out.at(f, j, c) = row[feats.layout.pos_offset + 3 * j + c];
  }
  return out;
}

MotionSequence resample_fps(const MotionSequence& seq, int target_fps) {
  if (target_fps < 1) throw std::invalid_argument("target_fps must be >= 1");
  if (target_fps > seq.fps()) throw std::runtime_error("upsampling unsupported");
  if (target_fps == seq.fps()) return seq;
  const double stride = static_cast<double>(seq.fps()) / target_fps;
  std::vector<int> indices;
  for (int k = 0;; ++k) {
    const int idx = static_cast<int>(std::llround(k * stride));
    if (idx >= seq.n_frames()) break;
    indices.push_back(idx);
  }
  MotionSequence out(static_cast<int>(indices.size()), seq.n_joints(), target_fps);
  for (size_t f = 0; f < indices.size(); ++f)
    for (int j = 0; j < seq.n_joints(); ++j)
      for (int c = 0; c < 3; ++c) out.at(static_cast<int>(f), j, c) = seq.at(indices[f], j, c);
  return out;
}

void save_motion(const std::filesystem::path& path, const MotionSequence& seq) {
  std::vector<uint8_t> buf;
  buf.reserve(20 + seq.data().size() * 4);
  auto put_u32 = [&buf](uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<uint8_t>((v >> (8 * i)) & 0xff));
  };
  buf.push_back('R');
  buf.push_back('G');
  buf.push_back('M');
  buf.push_back('O');
  put_u32(1);  // version
  put_u32(static_cast<uint32_t>(seq.n_joints()));
  put_u32(static_cast<uint32_t>(seq.n_frames()));
  put_u32(static_cast<uint32_t>(seq.fps()));
  for (double v : seq.data()) {
    const float f = static_cast<float>(v);
    uint32_t bits;
    std::memcpy(&bits, &f, 4);
    put_u32(bits);
  }
  write_binary_file(path, buf.data(), buf.size());
}

MotionSequence load_motion(const std::filesystem::path& path) {
  const std::vector<uint8_t> buf = read_binary_file(path);
  if (buf.size() < 20 || std::memcmp(buf.data(), "RGMO", 4) != 0)
    throw std::runtime_error("not a motion file: " + path.string());
  auto get_u32 = [&buf](size_t off) {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(buf[off + i]) << (8 * i);
    return v;
  };
  const uint32_t version = get_u32(4);
  if (version != 1) throw std::runtime_error("unsupported motion file version");
  const uint32_t J = get_u32(8);
  const uint32_t F = get_u32(12);
  const uint32_t fps = get_u32(16);
  const size_t expected = 20 + static_cast<size_t>(F) * J * 3 * 4;
  if (buf.size() != expected) throw std::runtime_error("truncated motion file: " + path.string());
  MotionSequence seq(static_cast<int>(F), static_cast<int>(J), static_cast<int>(fps));
  size_t off = 20;
  for (double& v : seq.data()) {
    const uint32_t bits = get_u32(off);
    float f;
    std::memcpy(&f, &bits, 4);
    v = f;
    off += 4;
  }
  return seq;
}

}  // namespace reactgen
