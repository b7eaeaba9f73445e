#include "reactgen/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "reactgen/io.hpp"

namespace reactgen::synth {

namespace {

constexpr int kHandshake = 0;
constexpr int kWave = 1;
constexpr int kHighFive = 2;
constexpr int kBow = 3;
constexpr int kPush = 4;
constexpr int kCircle = 5;
constexpr int kPoint = 6;
constexpr int kRetreat = 7;

const std::vector<ClassInfo> kClasses = {
    {kHandshake, "handshake"}, {kWave, "wave"},     {kHighFive, "high_five"},
    {kBow, "bow"},             {kPush, "push"},     {kCircle, "circle"},
    {kPoint, "point"},         {kRetreat, "retreat"},
};

// ---------------------------------------------------------------------------
// Body model: a parametric humanoid rendered from per-frame parameters.
// ---------------------------------------------------------------------------

struct ArmParams {
  double raise = 0.0;   // upper arm rotation from hanging toward forward/up
  double abduct = 0.0;  // + away from the body, - across the midline
  double elbow = 0.0;   // extra forearm rotation (same hinge as raise)
};

struct BodyParams {
  double torso_pitch = 0.0;  // + bends forward
  ArmParams left, right;
};

struct RootTrack {
  std::vector<double> x, z, heading;  // world ground placement per frame
};

struct PersonTrack {
  RootTrack root;
  std::vector<BodyParams> body;
};

constexpr double kUpperArmLen = 0.27;
constexpr double kForearmLen = 0.25;
constexpr double kPelvisY = 0.95;

// Canonical standing skeleton, pelvis at (0, kPelvisY, 0), facing +z,
// left side toward +x, arms hanging.
const Vec3 kRestPose[joint::kCount] = {
    {0.00, 0.95, 0.00},   // pelvis
    {0.10, 0.90, 0.00},   // left hip
    {-0.10, 0.90, 0.00},  // right hip
    {0.00, 1.05, 0.00},   // spine1
    {0.10, 0.50, 0.00},   // left knee
    {-0.10, 0.50, 0.00},  // right knee
    {0.00, 1.16, 0.00},   // spine2
    {0.10, 0.10, 0.00},   // left ankle
    {-0.10, 0.10, 0.00},  // right ankle
    {0.00, 1.27, 0.00},   // spine3
    {0.10, 0.03, 0.12},   // left foot
    {-0.10, 0.03, 0.12},  // right foot
    {0.00, 1.38, 0.00},   // neck
    {0.06, 1.32, 0.00},   // left collar
    {-0.06, 1.32, 0.00},  // right collar
    {0.00, 1.52, 0.00},   // head
    {0.18, 1.34, 0.00},   // left shoulder
    {-0.18, 1.34, 0.00},  // right shoulder
    {0.20, 1.07, 0.00},   // left elbow
    {-0.20, 1.07, 0.00},  // right elbow
    {0.22, 0.82, 0.00},   // left wrist
    {-0.22, 0.82, 0.00},  // right wrist
};

double clamp01(double t) { return std::clamp(t, 0.0, 1.0); }

// Smoothstep easing.
double ease(double t) {
  t = clamp01(t);
  return t * t * (3.0 - 2.0 * t);
}

// Normalized progress of tau through [a, b].
double phase(double tau, double a, double b) {
  if (b <= a) return tau >= b ? 1.0 : 0.0;
  return clamp01((tau - a) / (b - a));
}

// Rises over [a, m], falls over [m2, b]; 1 in between.
double pulse(double tau, double a, double m, double m2, double b) {
  return ease(phase(tau, a, m)) * (1.0 - ease(phase(tau, m2, b)));
}

Vec3 rot_x(const Vec3& v, double a) {
  const double c = std::cos(a), s = std::sin(a);
  return {v.x, c * v.y - s * v.z, s * v.y + c * v.z};
}

Vec3 rot_z(const Vec3& v, double a) {
  const double c = std::cos(a), s = std::sin(a);
  return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}

// Arm chain in the local body frame. `side` is +1 for the left arm.
void solve_arm(const Vec3& shoulder, const ArmParams& p, int side, Vec3* elbow, Vec3* wrist) {
  const Vec3 hang{0.0, -1.0, 0.0};
  const Vec3 upper_dir = rot_z(rot_x(hang, -p.raise), side * p.abduct);
  *elbow = {shoulder.x + kUpperArmLen * upper_dir.x, shoulder.y + kUpperArmLen * upper_dir.y,
            shoulder.z + kUpperArmLen * upper_dir.z};
  const Vec3 fore_dir = rot_z(rot_x(hang, -(p.raise + p.elbow)), side * p.abduct);
  *wrist = {elbow->x + kForearmLen * fore_dir.x, elbow->y + kForearmLen * fore_dir.y,
            elbow->z + kForearmLen * fore_dir.z};
}

// Gait state advanced per frame from root displacement.
struct Gait {
  double phi = 0.0;
  double dir_x = 0.0, dir_z = 1.0;  // travel direction in the local frame
  bool moving = false;

  void advance(double dx_local, double dz_local) {
    const double step = std::sqrt(dx_local * dx_local + dz_local * dz_local);
    moving = step > 1e-4;
    if (moving) {
      dir_x = dx_local / step;
      dir_z = dz_local / step;
      phi += step / 0.55 * M_PI;  // one step per 0.55 m of travel
    }
  }
};

void build_local_pose(const BodyParams& p, const Gait& gait, Vec3 out[joint::kCount]) {
  for (int j = 0; j < joint::kCount; ++j) out[j] = kRestPose[j];

  // Arms from parameters, attached to the unpitched shoulders.
  solve_arm(out[joint::kLeftShoulder], p.left, +1, &out[joint::kLeftElbow],
            &out[joint::kLeftWrist]);
  solve_arm(out[joint::kRightShoulder], p.right, -1, &out[joint::kRightElbow],
            &out[joint::kRightWrist]);

  // Torso pitch about the hip line, applied to everything above the pelvis.
  if (std::fabs(p.torso_pitch) > 1e-9) {
    const int upper[] = {joint::kSpine1,       joint::kSpine2,     joint::kSpine3,
                         joint::kNeck,         joint::kLeftCollar, joint::kRightCollar,
                         joint::kHead,         joint::kLeftShoulder, joint::kRightShoulder,
                         joint::kLeftElbow,    joint::kRightElbow, joint::kLeftWrist,
                         joint::kRightWrist};
    const double pivot_y = 0.95;
    for (int j : upper) {
      Vec3 v{out[j].x, out[j].y - pivot_y, out[j].z};
      v = rot_x(v, p.torso_pitch);
      out[j] = {v.x, v.y + pivot_y, v.z};
    }
  }

  // Walking: legs swing along the travel direction, feet lift on the swing
  // half of the cycle, pelvis bobs slightly.
  if (gait.moving) {
    const double swing = 0.14 * std::sin(gait.phi);
    const double lift_l = 0.04 * std::max(0.0, std::sin(gait.phi));
    const double lift_r = 0.04 * std::max(0.0, -std::sin(gait.phi));
    const int left_leg[] = {joint::kLeftKnee, joint::kLeftAnkle, joint::kLeftFoot};
    const int right_leg[] = {joint::kRightKnee, joint::kRightAnkle, joint::kRightFoot};
    const double wk = 0.5, wa = 1.0;  // knee swings half as far as the foot
    auto swing_leg = [&](const int* js, double s, double lift) {
      const double w[3] = {wk, wa, wa};
      for (int i = 0; i < 3; ++i) {
        out[js[i]].x += gait.dir_x * s * w[i];
        out[js[i]].z += gait.dir_z * s * w[i];
        if (i > 0) out[js[i]].y += lift;
      }
    };
    swing_leg(left_leg, swing, lift_l);
    swing_leg(right_leg, -swing, lift_r);
    const double bob = 0.012 * std::fabs(std::cos(gait.phi));
    const int upper_all[] = {joint::kPelvis, joint::kSpine1, joint::kSpine2, joint::kSpine3,
                             joint::kNeck,   joint::kHead,   joint::kLeftCollar,
                             joint::kRightCollar, joint::kLeftShoulder, joint::kRightShoulder,
                             joint::kLeftElbow,   joint::kRightElbow,   joint::kLeftWrist,
                             joint::kRightWrist};
    for (int j : upper_all) out[j].y += bob;
  }
}

MotionSequence render_person(const PersonTrack& track, int fps) {
  const int F = static_cast<int>(track.root.x.size());
  MotionSequence seq(F, joint::kCount, fps);
  Gait gait;
  for (int f = 0; f < F; ++f) {
    const double h = track.root.heading[f];
    const double c = std::cos(h), s = std::sin(h);
    if (f > 0) {
      const double dwx = track.root.x[f] - track.root.x[f - 1];
      const double dwz = track.root.z[f] - track.root.z[f - 1];
      // World displacement expressed in the body frame.
      gait.advance(dwx * c - dwz * s, dwx * s + dwz * c);
    }
    Vec3 local[joint::kCount];
    build_local_pose(track.body[f], gait, local);
    for (int j = 0; j < joint::kCount; ++j) {
      const Vec3& v = local[j];
      seq.at(f, j, 0) = v.x * c + v.z * s + track.root.x[f];
      seq.at(f, j, 1) = v.y;
      seq.at(f, j, 2) = -v.x * s + v.z * c + track.root.z[f];
    }
  }
  return seq;
}

// ---------------------------------------------------------------------------
// Choreography
// ---------------------------------------------------------------------------

struct Scenario {
  int n_frames;
  int fps;
  double gap;           // initial pelvis distance
  int variant, tempo, dist_cat;
  double tempo_scale;   // < 1 compresses active phases (fast)
  // world placement
  double ax, az, ah;
  double bx, bz, bh;
  PersonTrack a, b;
};

double tau_of(const Scenario& sc, int f) {
  return sc.n_frames > 1 ? static_cast<double>(f) / (sc.n_frames - 1) : 0.0;
}

// Remaps tau so the whole script finishes at `scale` of the clip (fast tempo
// finishes early and holds the final pose).
double script_tau(const Scenario& sc, int f) {
  const double t = tau_of(sc, f) / sc.tempo_scale;
  return clamp01(t);
}

void init_tracks(Scenario& sc) {
  sc.a.root.x.assign(sc.n_frames, sc.ax);
  sc.a.root.z.assign(sc.n_frames, sc.az);
  sc.a.root.heading.assign(sc.n_frames, sc.ah);
  sc.a.body.assign(sc.n_frames, BodyParams{});
  sc.b.root.x.assign(sc.n_frames, sc.bx);
  sc.b.root.z.assign(sc.n_frames, sc.bz);
  sc.b.root.heading.assign(sc.n_frames, sc.bh);
  sc.b.body.assign(sc.n_frames, BodyParams{});
}

// Moves person forward along their own heading by dist * ease(progress).
void walk_forward(RootTrack& rt, const Scenario& sc, double t0, double t1, double dist) {
  for (int f = 0; f < sc.n_frames; ++f) {
    const double p = ease(phase(script_tau(sc, f), t0, t1)) * dist;
    rt.x[f] += std::sin(rt.heading[f]) * p;
    rt.z[f] += std::cos(rt.heading[f]) * p;
  }
}

// Caps walking speed at 2.0 m/s by shrinking the covered distance.
double reachable_dist(const Scenario& sc, double want, double t0, double t1) {
  const double seconds = (t1 - t0) * sc.tempo_scale * (sc.n_frames - 1) / sc.fps;
  return std::min(want, 2.0 * seconds / 1.5);  // 1.5 = peak/mean of smoothstep
}

// Raise arm toward a local-frame target point (used for handshake/high five
// contact). Returns the ArmParams that reach it, approximately.
ArmParams arm_toward(const Vec3& shoulder, const Vec3& target, int side) {
  ArmParams p;
  const double dx = target.x - shoulder.x;
  const double dy = target.y - shoulder.y;
  const double dz = target.z - shoulder.z;
  p.raise = std::atan2(dz, -dy);  // hanging (0,-1,0) toward (0,dy,dz)
  const double planar = std::sqrt(dz * dz + dy * dy);
  p.abduct = side * std::atan2(dx, planar);
  p.elbow = 0.0;
  return p;
}

ArmParams lerp_arm(const ArmParams& a, const ArmParams& b, double t) {
  return {a.raise + (b.raise - a.raise) * t, a.abduct + (b.abduct - a.abduct) * t,
          a.elbow + (b.elbow - a.elbow) * t};
}

void choreo_handshake(Scenario& sc, Rng& rng) {
  const double stop_gap = 0.78;
  const double walk = reachable_dist(sc, sc.gap - stop_gap, 0.05, 0.42);
  walk_forward(sc.a.root, sc, 0.05, 0.42, walk);
  const int side = sc.variant == 0 ? -1 : +1;  // 0: right hand
  const int sj = sc.variant == 0 ? joint::kRightShoulder : joint::kLeftShoulder;
  // Contact point on the midline between the two at handshake height.
  const double remaining = sc.gap - walk;
  const Vec3 target{side * -0.02, 1.02, remaining / 2.0};
  const Vec3 target_b{side * 0.02, 1.02, remaining / 2.0};
  const double shake_hz = sc.tempo ? 2.6 : 1.8;
  for (int f = 0; f < sc.n_frames; ++f) {
    const double t = script_tau(sc, f);
    const double reach_a = pulse(t, 0.34, 0.52, 0.82, 0.95);
    const double reach_b = pulse(t, 0.40, 0.56, 0.82, 0.95);
    const double shake = pulse(t, 0.52, 0.60, 0.74, 0.84) * 0.06 *
                         std::sin(2.0 * M_PI * shake_hz * t * sc.n_frames / sc.fps);
    ArmParams rest{};
    ArmParams a_hold = arm_toward(kRestPose[sj], {target.x, target.y + shake, target.z}, side);
    ArmParams b_hold = arm_toward(kRestPose[sj], {target_b.x, target_b.y + shake, target_b.z}, side);
    ArmParams& arm_a = sc.variant == 0 ? sc.a.body[f].right : sc.a.body[f].left;
    ArmParams& arm_b = sc.variant == 0 ? sc.b.body[f].right : sc.b.body[f].left;
    arm_a = lerp_arm(rest, a_hold, reach_a);
    arm_b = lerp_arm(rest, b_hold, reach_b);
  }
  (void)rng;
}

void choreo_wave(Scenario& sc, Rng& rng) {
  const double delay = rng.uniform(0.12, 0.2);
  const double cycles = sc.tempo ? 3.0 : 2.0;
  const int side = sc.variant == 0 ? -1 : +1;
  for (int f = 0; f < sc.n_frames; ++f) {
    const double t = script_tau(sc, f);
    auto wave_arm = [&](double t0, ArmParams& arm) {
      const double lift = pulse(t, t0, t0 + 0.18, 0.78, 0.92);
      const double osc = std::sin(2.0 * M_PI * cycles * phase(t, t0 + 0.18, 0.78));
      arm.raise = lift * 2.35;  // hand up next to the head
      arm.abduct = lift * (0.35 + 0.22 * osc);
      arm.elbow = lift * 0.5;
    };
    wave_arm(0.08, sc.variant == 0 ? sc.a.body[f].right : sc.a.body[f].left);
    wave_arm(0.08 + delay, sc.variant == 0 ? sc.b.body[f].right : sc.b.body[f].left);
  }
  (void)side;
}

void choreo_high_five(Scenario& sc, Rng& rng) {
  const double stop_gap = 0.82;
  const double walk = reachable_dist(sc, sc.gap - stop_gap, 0.05, 0.38);
  walk_forward(sc.a.root, sc, 0.05, 0.38, walk);
  const int side = sc.variant == 0 ? -1 : +1;
  const int sj = sc.variant == 0 ? joint::kRightShoulder : joint::kLeftShoulder;
  const double remaining = sc.gap - walk;
  // Both palms meet high on the midline.
  const Vec3 target_a{side * -0.015, 1.62, remaining / 2.0 + 0.03};
  const Vec3 target_b{side * 0.015, 1.62, remaining / 2.0 - 0.03};
  for (int f = 0; f < sc.n_frames; ++f) {
    const double t = script_tau(sc, f);
    const double reach_a = pulse(t, 0.30, 0.52, 0.66, 0.88);
    const double reach_b = pulse(t, 0.36, 0.54, 0.66, 0.88);
    ArmParams rest{};
    ArmParams& arm_a = sc.variant == 0 ? sc.a.body[f].right : sc.a.body[f].left;
    ArmParams& arm_b = sc.variant == 0 ? sc.b.body[f].right : sc.b.body[f].left;
    arm_a = lerp_arm(rest, arm_toward(kRestPose[sj], target_a, side), reach_a);
    arm_b = lerp_arm(rest, arm_toward(kRestPose[sj], target_b, side), reach_b);
  }
  (void)rng;
}

void choreo_bow(Scenario& sc, Rng& rng) {
  const double depth = sc.variant == 0 ? 0.55 : 0.25;  // 0: deep
  const double delay = rng.uniform(0.15, 0.25);
  for (int f = 0; f < sc.n_frames; ++f) {
    const double t = script_tau(sc, f);
    sc.a.body[f].torso_pitch = depth * pulse(t, 0.12, 0.32, 0.55, 0.8);
    sc.b.body[f].torso_pitch = depth * pulse(t, 0.12 + delay, 0.32 + delay, 0.62, 0.88);
  }
}

void choreo_push(Scenario& sc, Rng& rng) {
  const double stop_gap = 0.62;
  const double walk = reachable_dist(sc, sc.gap - stop_gap, 0.05, 0.34);
  walk_forward(sc.a.root, sc, 0.05, 0.34, walk);
  const int side = sc.variant == 0 ? -1 : +1;
  const int sj = sc.variant == 0 ? joint::kRightShoulder : joint::kLeftShoulder;
  const double remaining = sc.gap - walk;
  const Vec3 target{side * -0.05, 1.25, remaining - 0.18};  // the other's chest
  const double wobble = rng.uniform(0.03, 0.06);
  // Reaction: two quick steps back with a backward lean.
  const double stumble = 0.4;
  for (int f = 0; f < sc.n_frames; ++f) {
    const double t = script_tau(sc, f);
    const double reach = pulse(t, 0.36, 0.47, 0.54, 0.72);
    ArmParams rest{};
    ArmParams& arm = sc.variant == 0 ? sc.a.body[f].right : sc.a.body[f].left;
    arm = lerp_arm(rest, arm_toward(kRestPose[sj], target, side), reach);
    const double back = ease(phase(t, 0.48, 0.75)) * stumble;
    sc.b.root.x[f] -= std::sin(sc.b.root.heading[f]) * back;
    sc.b.root.z[f] -= std::cos(sc.b.root.heading[f]) * back;
    sc.b.root.heading[f] += wobble * std::sin(2.0 * M_PI * 2.0 * phase(t, 0.48, 0.8)) *
                            pulse(t, 0.48, 0.55, 0.7, 0.8);
    sc.b.body[f].torso_pitch = -0.22 * pulse(t, 0.46, 0.56, 0.68, 0.85);
  }
}

void choreo_circle(Scenario& sc, Rng& rng) {
  const double sweep = (sc.variant == 0 ? 1.0 : -1.0) * rng.uniform(1.6, 2.2);
  const double radius = sc.gap;
  // A orbits B; B turns in place to keep facing A.
  const double bx = sc.bx, bz = sc.bz;
  const double a0 = std::atan2(sc.ax - bx, sc.az - bz);
  for (int f = 0; f < sc.n_frames; ++f) {
    const double t = script_tau(sc, f);
    const double ang = a0 + sweep * ease(phase(t, 0.08, 0.92));
    sc.a.root.x[f] = bx + radius * std::sin(ang);
    sc.a.root.z[f] = bz + radius * std::cos(ang);
  }
  for (int f = 0; f < sc.n_frames; ++f) {
    // Face the direction of travel while moving; face B at the ends.
    if (f > 0) {
      const double dx = sc.a.root.x[f] - sc.a.root.x[f - 1];
      const double dz = sc.a.root.z[f] - sc.a.root.z[f - 1];
      if (std::sqrt(dx * dx + dz * dz) > 1e-5)
        sc.a.root.heading[f] = std::atan2(dx, dz);
      else
        sc.a.root.heading[f] = sc.a.root.heading[f - 1];
    }
    // B tracks A.
    sc.b.root.heading[f] = std::atan2(sc.a.root.x[f] - bx, sc.a.root.z[f] - bz);
  }
}

void choreo_point(Scenario& sc, Rng& rng) {
  const int side = sc.variant == 0 ? -1 : +1;
  const double azim = side * rng.uniform(0.9, 1.2);  // pointing direction off the midline
  const int sj = sc.variant == 0 ? joint::kRightShoulder : joint::kLeftShoulder;
  const Vec3 target{std::sin(azim) * 0.6 * -side * side, 1.45, 0.0};
  // Build the pointing arm directly from angles: horizontal, rotated sideways.
  for (int f = 0; f < sc.n_frames; ++f) {
    const double t = script_tau(sc, f);
    const double lift = pulse(t, 0.15, 0.35, 0.8, 0.95);
    ArmParams& arm = sc.variant == 0 ? sc.a.body[f].right : sc.a.body[f].left;
    arm.raise = lift * 1.5;
    arm.abduct = lift * std::fabs(azim) * 0.7;
    // B turns toward the pointed direction and holds.
    const double turn = ease(phase(t, 0.4, 0.65));
    sc.b.root.heading[f] = sc.bh - side * turn * std::fabs(azim);
  }
  (void)sj;
  (void)target;
}

void choreo_retreat(Scenario& sc, Rng& rng) {
  const double veer = (sc.variant == 0 ? 1.0 : -1.0) * rng.uniform(0.2, 0.35);
  const double dist = reachable_dist(sc, rng.uniform(1.0, 1.4), 0.1, 0.85);
  // A backs away from B (still facing B), veering sideways.
  const double dir = sc.ah + M_PI + veer;  // world direction of travel
  for (int f = 0; f < sc.n_frames; ++f) {
    const double t = script_tau(sc, f);
    const double p = ease(phase(t, 0.1, 0.85)) * dist;
    sc.a.root.x[f] += std::sin(dir) * p;
    sc.a.root.z[f] += std::cos(dir) * p;
    // A keeps facing B while backing off.
    sc.a.root.heading[f] = std::atan2(sc.bx - sc.a.root.x[f], sc.bz - sc.a.root.z[f]);
  }
  // B follows A's displacement with a delay, facing A.
  for (int f = 0; f < sc.n_frames; ++f) {
    const double t = script_tau(sc, f);
    const double p = ease(phase(t, 0.3, 1.0)) * dist;
    sc.b.root.x[f] += std::sin(dir) * p;
    sc.b.root.z[f] += std::cos(dir) * p;
    sc.b.root.heading[f] = std::atan2(sc.a.root.x[f] - sc.b.root.x[f],
                                      sc.a.root.z[f] - sc.b.root.z[f]);
  }
}

// ---------------------------------------------------------------------------
// Captions
// ---------------------------------------------------------------------------

struct WordChoices {
  std::vector<std::string> tempo_slow{"slowly", "casually"};
  std::vector<std::string> tempo_fast{"quickly", "briskly"};
  std::vector<std::string> dist_close{"up close", "at arm's length"};
  std::vector<std::string> dist_medium{"a few steps apart", "from a short distance"};
  std::vector<std::string> dist_far{"from afar", "from a distance"};
};

std::string replace_all(std::string text, const std::string& slot, const std::string& value) {
  size_t pos = 0;
  while ((pos = text.find(slot, pos)) != std::string::npos) {
    text.replace(pos, slot.size(), value);
    pos += value.size();
  }
  return text;
}

const std::map<int, std::vector<std::string>>& caption_skeletons() {
  static const std::map<int, std::vector<std::string>> k = {
      {kHandshake,
       {"one person walks up {tempo} {dist} and shakes the other's {var} hand and the other "
        "shakes back",
        "starting {dist} a person approaches {tempo} and offers the {var} hand for a handshake "
        "which the other accepts",
        "a person comes over {tempo} {dist} to shake {var} hands and the other person "
        "reciprocates"}},
      {kWave,
       {"one person waves the {var} hand {tempo} {dist} and the other waves back",
        "standing {dist} a person {tempo} waves with the {var} hand and the other returns the "
        "wave",
        "a person greets {tempo} by waving the {var} hand {dist} and the other responds with a "
        "wave"}},
      {kHighFive,
       {"one person steps in {tempo} {dist} and gives a {var} handed high five which the other "
        "meets",
        "a person approaches {tempo} {dist} raising the {var} hand high and the other claps it "
        "for a high five",
        "coming {dist} a person {tempo} offers a high five with the {var} hand and the other "
        "slaps it"}},
      {kBow,
       {"one person makes a {var} bow {tempo} {dist} and the other bows back",
        "a person {tempo} performs a {var} bow {dist} and the other returns the bow",
        "facing each other {dist} one person gives a {var} bow {tempo} and the other responds "
        "with a bow"}},
      {kPush,
       {"one person {tempo} shoves the other with the {var} hand {dist} and the other stumbles "
        "backward",
        "after closing in {dist} a person pushes {tempo} with the {var} hand making the other "
        "stagger back",
        "a person steps up {dist} and {tempo} pushes the other using the {var} hand and the "
        "other staggers backwards"}},
      {kCircle,
       {"one person walks {tempo} in a circle {var} around the other {dist} while the other "
        "turns to follow",
        "starting {dist} a person circles the other {var} {tempo} and the other rotates to keep "
        "facing them",
        "a person moves {tempo} around the other {var} {dist} as the other keeps turning toward "
        "them"}},
      {kPoint,
       {"one person {tempo} points {dist} with the {var} hand and the other turns to look",
        "standing {dist} a person raises the {var} arm {tempo} to point and the other looks "
        "that way",
        "a person points something out with the {var} hand {tempo} {dist} and the other turns "
        "to see"}},
      {kRetreat,
       {"one person backs away {tempo} drifting {var} {dist} and the other follows",
        "a person retreats {tempo} toward the {var} {dist} while the other walks after them",
        "starting {dist} one person steps back {tempo} veering {var} and the other pursues"}},
  };
  return k;
}

std::string variant_word(int class_id, int variant, Rng& rng) {
  switch (class_id) {
    case kBow:
      return variant == 0 ? "deep" : "slight";
    case kCircle:
    case kRetreat: {
      const bool left = variant == 0;
      (void)rng;
      return left ? "to the left" : "to the right";
    }
    default:
      return variant == 0 ? "right" : "left";
  }
}

std::vector<std::string> make_captions(int class_id, int variant, int tempo, int dist_cat,
                                       Rng& rng) {
  const WordChoices words;
  const auto& skeletons = caption_skeletons().at(class_id);
  std::vector<int> order(skeletons.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  rng.shuffle(order);
  std::vector<std::string> captions;
  for (size_t i = 0; i < 3 && i < order.size(); ++i) {
    std::string text = skeletons[static_cast<size_t>(order[i])];
    const auto& tempo_pool = tempo ? words.tempo_fast : words.tempo_slow;
    const auto& dist_pool = dist_cat == 0   ? words.dist_close
                            : dist_cat == 1 ? words.dist_medium
                                            : words.dist_far;
    text = replace_all(text, "{tempo}", rng.pick(tempo_pool));
    text = replace_all(text, "{dist}", rng.pick(dist_pool));
    text = replace_all(text, "{var}", variant_word(class_id, variant, rng));
    captions.push_back(text);
  }
  return captions;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public surface
// ---------------------------------------------------------------------------

const std::vector<ClassInfo>& classes() { return kClasses; }

int num_classes() { return static_cast<int>(kClasses.size()); }

const std::string& class_name(int class_id) {
  if (class_id < 0 || class_id >= num_classes()) throw std::invalid_argument("unknown class id");
  return kClasses[static_cast<size_t>(class_id)].name;
}

int class_id(const std::string& name) {
  for (const auto& c : kClasses)
    if (c.name == name) return c.id;
  throw std::invalid_argument("unknown interaction class: " + name);
}

InteractionSample generate(int class_id, uint64_t seed, int n_frames, int fps) {
  if (class_id < 0 || class_id >= num_classes())
    throw std::invalid_argument("unknown interaction class id");
  if (n_frames < 2) throw std::invalid_argument("n_frames must be >= 2");

  Rng rng(derive_seed(derive_seed(seed, "synth-sample", static_cast<uint64_t>(class_id)),
                      "frames", static_cast<uint64_t>(n_frames)));

  Scenario sc;
  sc.n_frames = n_frames;
  sc.fps = fps;
  sc.variant = static_cast<int>(rng.uniform_int(2));
  sc.tempo = static_cast<int>(rng.uniform_int(2));
  sc.dist_cat = static_cast<int>(rng.uniform_int(3));
  sc.tempo_scale = sc.tempo ? 0.82 : 1.0;

  const double gap_lo[3] = {0.9, 1.6, 2.4};
  const double gap_hi[3] = {1.3, 2.1, 3.0};
  sc.gap = rng.uniform(gap_lo[sc.dist_cat], gap_hi[sc.dist_cat]);

  const double cx = rng.uniform(-1.5, 1.5);
  const double cz = rng.uniform(-1.5, 1.5);
  const double axis = rng.uniform(-M_PI, M_PI);
  sc.ax = cx - 0.5 * sc.gap * std::sin(axis);
  sc.az = cz - 0.5 * sc.gap * std::cos(axis);
  sc.bx = cx + 0.5 * sc.gap * std::sin(axis);
  sc.bz = cz + 0.5 * sc.gap * std::cos(axis);
  sc.ah = wrap_angle(axis);
  sc.bh = wrap_angle(axis + M_PI);

  init_tracks(sc);
  switch (class_id) {
    case kHandshake: choreo_handshake(sc, rng); break;
    case kWave: choreo_wave(sc, rng); break;
    case kHighFive: choreo_high_five(sc, rng); break;
    case kBow: choreo_bow(sc, rng); break;
    case kPush: choreo_push(sc, rng); break;
    case kCircle: choreo_circle(sc, rng); break;
    case kPoint: choreo_point(sc, rng); break;
    case kRetreat: choreo_retreat(sc, rng); break;
    default: throw std::invalid_argument("unknown interaction class id");
  }

  InteractionSample sample;
  sample.action = render_person(sc.a, fps);
  sample.reaction = render_person(sc.b, fps);
  sample.action_space = space_state_at(sample.action, 0);
  sample.reaction_space = space_state_at(sample.reaction, 0);
  sample.label = class_id;
  sample.seed = seed;
  sample.variant = sc.variant;
  sample.tempo = sc.tempo;
  sample.dist_cat = sc.dist_cat;
  sample.captions = make_captions(class_id, sc.variant, sc.tempo, sc.dist_cat, rng);
  return sample;
}

InteractionSample random_clip(const InteractionSample& sample, Rng& rng, ClipConfig cfg) {
  const int F = sample.action.n_frames();
  if (F < cfg.min_frames) throw std::invalid_argument("sequence shorter than the minimum clip");
  const int max_len = cfg.max_frames > 0 ? std::min(cfg.max_frames, F) : F;
  const int len = cfg.min_frames + static_cast<int>(rng.uniform_int(max_len - cfg.min_frames + 1));
  const int start = static_cast<int>(rng.uniform_int(F - len + 1));

  auto slice = [&](const MotionSequence& seq) {
    MotionSequence out(len, seq.n_joints(), seq.fps());
    for (int f = 0; f < len; ++f)
      for (int j = 0; j < seq.n_joints(); ++j)
        for (int c = 0; c < 3; ++c) out.at(f, j, c) = seq.at(start + f, j, c);
    return out;
  };

  InteractionSample out = sample;
  out.action = slice(sample.action);
  out.reaction = slice(sample.reaction);
  out.action_space = space_state_at(out.action, 0);
  out.reaction_space = space_state_at(out.reaction, 0);
  return out;
}

void save_sample(const std::filesystem::path& dir, const InteractionSample& sample) {
  std::filesystem::create_directories(dir);
  save_motion(dir / "action.rgmo", sample.action);
  save_motion(dir / "reaction.rgmo", sample.reaction);
  std::ostringstream meta;
  meta.precision(17);
  meta << "# interaction sample v1\n";
  meta << "class " << sample.label << " " << class_name(sample.label) << "\n";
  meta << "seed " << sample.seed << "\n";
  meta << "variant " << sample.variant << "\n";
  meta << "tempo " << sample.tempo << "\n";
  meta << "dist " << sample.dist_cat << "\n";
  meta << "action_space " << sample.action_space.x << " " << sample.action_space.z << " "
       << sample.action_space.r << "\n";
  meta << "reaction_space " << sample.reaction_space.x << " " << sample.reaction_space.z << " "
       << sample.reaction_space.r << "\n";
  for (const auto& c : sample.captions) meta << "caption " << c << "\n";
  write_text_file(dir / "meta.txt", meta.str());
}

InteractionSample load_sample(const std::filesystem::path& dir) {
  InteractionSample sample;
  sample.action = load_motion(dir / "action.rgmo");
  sample.reaction = load_motion(dir / "reaction.rgmo");
  for (const auto& line : split_lines(read_text_file(dir / "meta.txt"))) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    if (key == "class") {
      ss >> sample.label;
    } else if (key == "seed") {
      ss >> sample.seed;
    } else if (key == "variant") {
      ss >> sample.variant;
    } else if (key == "tempo") {
      ss >> sample.tempo;
    } else if (key == "dist") {
      ss >> sample.dist_cat;
    } else if (key == "action_space") {
      ss >> sample.action_space.x >> sample.action_space.z >> sample.action_space.r;
    } else if (key == "reaction_space") {
      ss >> sample.reaction_space.x >> sample.reaction_space.z >> sample.reaction_space.r;
    } else if (key == "caption") {
      std::string rest;
      std::getline(ss, rest);
      if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
      sample.captions.push_back(rest);
    }
  }
  if (sample.captions.empty()) throw std::runtime_error("sample has no captions: " + dir.string());
  return sample;
}

int build_dataset(const std::filesystem::path& out_dir, const DatasetConfig& cfg) {
  int written = 0;
  std::map<std::string, std::vector<std::string>> index;
  Rng frames_rng(derive_seed(cfg.seed, "synth-frames"));
  for (const auto& cls : classes()) {
    for (int i = 0; i < cfg.samples_per_class; ++i) {
      const uint64_t sample_seed =
          derive_seed(cfg.seed, "sample", static_cast<uint64_t>(cls.id) * 100000 + i);
      const int span = cfg.max_frames - cfg.min_frames;
      const int n_frames =
          cfg.min_frames + (span > 0 ? static_cast<int>(frames_rng.uniform_int(span + 1)) : 0);
      const InteractionSample sample = generate(cls.id, sample_seed, n_frames, cfg.fps);
      const std::string split = (i % 10 == 8) ? "val" : (i % 10 == 9) ? "test" : "train";
      std::ostringstream name;
      name << cls.name << "_" << std::setw(4) << std::setfill('0') << i;
      const auto rel = std::filesystem::path(split) / name.str();
      save_sample(out_dir / rel, sample);
      index[split].push_back(name.str());
      ++written;
    }
  }
  for (const auto& [split, names] : index) {
    std::ostringstream body;
    for (const auto& n : names) body << n << "\n";
    write_text_file(out_dir / split / "index.txt", body.str());
  }
  return written;
}

std::vector<std::filesystem::path> list_samples(const std::filesystem::path& data_dir,
                                                const std::string& split) {
  const auto index_path = data_dir / split / "index.txt";
  require_file(index_path, "reactgen synth-data");
  std::vector<std::filesystem::path> out;
  for (const auto& line : split_lines(read_text_file(index_path)))
    if (!line.empty()) out.push_back(data_dir / split / line);
  return out;
}

std::vector<InteractionSample> load_split(const std::filesystem::path& data_dir,
                                          const std::string& split) {
  std::vector<InteractionSample> out;
  for (const auto& dir : list_samples(data_dir, split)) out.push_back(load_sample(dir));
  return out;
}

}  // namespace reactgen::synth
