#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "clutterbench/errors.hpp"
#include "clutterbench/image.hpp"
#include "clutterbench/vec.hpp"

namespace clutterbench {

enum class Shape { Box, Cylinder, Sphere };

inline const char* to_string(Shape s) {
    switch (s) {
        case Shape::Box: return "box";
        case Shape::Cylinder: return "cylinder";
        case Shape::Sphere: return "sphere";
    }
    return "?";
}

inline Shape shape_from_string(const std::string& s) {
    if (s == "box") return Shape::Box;
    if (s == "cylinder") return Shape::Cylinder;
    if (s == "sphere") return Shape::Sphere;
    throw invalid_input("unknown shape tag: " + s);
}

// A table-top primitive. dims: box full extents w,d,h; cylinder radius,height;
// sphere radius. pose.z is the support height (half height or radius), i.e.
// every object rests on the z=0 table plane.
struct ObjectSpec {
    std::string id;
    Shape shape = Shape::Box;
    double dims[3] = {0.0, 0.0, 0.0};
    Rgb color;
    double x = 0.0, y = 0.0, z = 0.0, yaw = 0.0;

    double height() const {
        switch (shape) {
            case Shape::Box: return dims[2];
            case Shape::Cylinder: return dims[1];
            case Shape::Sphere: return 2.0 * dims[0];
        }
        return 0.0;
    }

    double support_height() const { return 0.5 * height(); }

    // Radius of the conservative bounding circle of the footprint.
    double footprint_radius() const {
        switch (shape) {
            case Shape::Box: return 0.5 * std::hypot(dims[0], dims[1]);
            case Shape::Cylinder: return dims[0];
            case Shape::Sphere: return dims[0];
        }
        return 0.0;
    }

    friend bool operator==(const ObjectSpec& a, const ObjectSpec& b) {
        return a.id == b.id && a.shape == b.shape && a.dims[0] == b.dims[0] &&
               a.dims[1] == b.dims[1] && a.dims[2] == b.dims[2] && a.color == b.color &&
               a.x == b.x && a.y == b.y && a.z == b.z && a.yaw == b.yaw;
    }
};

struct CameraSpec {
    Vec3 position;
    Vec3 look_at;
    double vertical_fov = 1.0;  // radians
    int width = 256;
    int height = 256;
    Vec3 light_dir{0.0, 0.0, 1.0};  // direction pointing toward the light

    friend bool operator==(const CameraSpec&, const CameraSpec&) = default;
};

struct SceneSpec {
    double table_half_x = 0.4;
    double table_half_y = 0.3;
    Rgb table_color{0.55, 0.45, 0.35};
    Rgb background_color{0.78, 0.82, 0.86};
    std::string target_id;
    CameraSpec robot_cam;
    CameraSpec top_cam;
    std::vector<ObjectSpec> objects;

    const ObjectSpec* find(const std::string& id) const {
        for (const auto& o : objects)
            if (o.id == id) return &o;
        return nullptr;
    }

    const ObjectSpec& target() const {
        const ObjectSpec* t = find(target_id);
        if (!t) throw invalid_input("scene: target_id not among objects: " + target_id);
        return *t;
    }

    friend bool operator==(const SceneSpec&, const SceneSpec&) = default;
};

// Per-pixel hit ids. The table is not an object: it renders and occludes but
// carries no object id.
inline constexpr std::int32_t kHitBackground = -1;
inline constexpr std::int32_t kHitTable = -2;

struct RenderOutput {
    Image color;                       // SRGB
    std::vector<double> depth;         // meters, +inf for background
    std::vector<std::int32_t> hit;     // kHitBackground, kHitTable or object index

    std::size_t count_object_pixels(std::int32_t index) const {
        std::size_t n = 0;
        for (std::int32_t h : hit) n += (h == index);
        return n;
    }
};

namespace detail {

struct Ray {
    Vec3 origin;
    Vec3 dir;
};

struct Hit {
    double t = std::numeric_limits<double>::infinity();
    Vec3 normal;
};

inline constexpr double kRayEps = 1e-12;

inline bool hit_sphere(const Ray& r, const Vec3& c, double radius, Hit& out) {
    const Vec3 oc = r.origin - c;
    const double b = dot(oc, r.dir);
    const double cc = dot(oc, oc) - radius * radius;
    const double disc = b * b - cc;
    if (disc < 0.0) return false;
    const double s = std::sqrt(disc);
    double t = -b - s;
    if (t < kRayEps) t = -b + s;
    if (t < kRayEps) return false;
    out.t = t;
    out.normal = normalized(r.origin + r.dir * t - c);
    return true;
}

// Upright cylinder spanning z in [z0, z1], caps included.
inline bool hit_cylinder(const Ray& r, const Vec3& base, double radius, double height,
                         Hit& out) {
    const double z0 = base.z, z1 = base.z + height;
    double best = std::numeric_limits<double>::infinity();
    Vec3 best_n;

    const double ox = r.origin.x - base.x, oy = r.origin.y - base.y;
    const double dx = r.dir.x, dy = r.dir.y;
    const double a = dx * dx + dy * dy;
    if (a > 0.0) {
        const double b = ox * dx + oy * dy;
        const double c = ox * ox + oy * oy - radius * radius;
        const double disc = b * b - a * c;
        if (disc >= 0.0) {
            const double s = std::sqrt(disc);
            for (const double t : {(-b - s) / a, (-b + s) / a}) {
                if (t < kRayEps || t >= best) continue;
                const double z = r.origin.z + r.dir.z * t;
                if (z < z0 || z > z1) continue;
                best = t;
                best_n = normalized({ox + dx * t, oy + dy * t, 0.0});
                break;  // candidates are ordered
            }
        }
    }
    if (r.dir.z != 0.0) {
        for (const double zc : {z0, z1}) {
            const double t = (zc - r.origin.z) / r.dir.z;
            if (t < kRayEps || t >= best) continue;
            const double px = r.origin.x + r.dir.x * t - base.x;
            const double py = r.origin.y + r.dir.y * t - base.y;
            if (px * px + py * py > radius * radius) continue;
            best = t;
            best_n = {0.0, 0.0, zc == z0 ? -1.0 : 1.0};
        }
    }
    if (!std::isfinite(best)) return false;
    out.t = best;
    out.normal = best_n;
    return true;
}

// Axis-aligned slab test in the box frame (translated to the center, rotated
// by -yaw about z).
inline bool hit_box(const Ray& r, const ObjectSpec& o, Hit& out) {
    const double cy = std::cos(o.yaw), sy = std::sin(o.yaw);
    const Vec3 oc{r.origin.x - o.x, r.origin.y - o.y, r.origin.z - o.z};
    const Vec3 lo{cy * oc.x + sy * oc.y, -sy * oc.x + cy * oc.y, oc.z};
    const Vec3 ld{cy * r.dir.x + sy * r.dir.y, -sy * r.dir.x + cy * r.dir.y, r.dir.z};
    const double half[3] = {0.5 * o.dims[0], 0.5 * o.dims[1], 0.5 * o.dims[2]};
    const double org[3] = {lo.x, lo.y, lo.z};
    const double dir[3] = {ld.x, ld.y, ld.z};

    double tmin = -std::numeric_limits<double>::infinity();
    double tmax = std::numeric_limits<double>::infinity();
    int axis_min = -1;
    double sign_min = 0.0;
    for (int a = 0; a < 3; ++a) {
        if (dir[a] == 0.0) {
            if (org[a] < -half[a] || org[a] > half[a]) return false;
            continue;
        }
        double t1 = (-half[a] - org[a]) / dir[a];
        double t2 = (half[a] - org[a]) / dir[a];
        double sgn = -1.0;
        if (t1 > t2) {
            std::swap(t1, t2);
            sgn = 1.0;
        }
        if (t1 > tmin) {
            tmin = t1;
            axis_min = a;
            sign_min = sgn;
        }
        tmax = std::min(tmax, t2);
        if (tmin > tmax) return false;
    }
    double t = tmin;
    if (t < kRayEps) return false;  // origins inside boxes do not occur here
    double ln[3] = {0.0, 0.0, 0.0};
    ln[axis_min] = sign_min;
    out.t = t;
    out.normal = {cy * ln[0] - sy * ln[1], sy * ln[0] + cy * ln[1], ln[2]};
    return true;
}

inline bool hit_object(const Ray& r, const ObjectSpec& o, Hit& out) {
    switch (o.shape) {
        case Shape::Sphere:
            return hit_sphere(r, {o.x, o.y, o.z}, o.dims[0], out);
        case Shape::Cylinder:
            return hit_cylinder(r, {o.x, o.y, o.z - 0.5 * o.dims[1]}, o.dims[0], o.dims[1], out);
        case Shape::Box:
            return hit_box(r, o, out);
    }
    return false;
}

struct CameraFrame {
    Vec3 origin, forward, right, up;
    double tan_half_fov;
};

inline CameraFrame camera_frame(const CameraSpec& cam) {
    if (cam.position == cam.look_at)
        throw invalid_input("camera: position equals look_at");
    if (!(cam.vertical_fov > 0.0) || !(cam.vertical_fov < M_PI))
        throw invalid_input("camera: vertical_fov out of (0, pi)");
    if (cam.width < 1 || cam.height < 1)
        throw invalid_input("camera: resolution must be positive");
    CameraFrame f;
    f.origin = cam.position;
    f.forward = normalized(cam.look_at - cam.position);
    Vec3 world_up{0.0, 0.0, 1.0};
    if (std::abs(dot(f.forward, world_up)) > 0.999) world_up = {0.0, 1.0, 0.0};
    f.right = normalized(cross(f.forward, world_up));
    f.up = cross(f.right, f.forward);
    f.tan_half_fov = std::tan(0.5 * cam.vertical_fov);
    return f;
}

}  // namespace clutterbench::detail

inline constexpr double kAmbient = 0.3;

// Deterministic per-pixel ray casting with nearest-hit resolution and Lambert
// shading over a 0.3 ambient floor. `only_object`, when set, renders that
// object alone (the table still renders).
inline RenderOutput render(const SceneSpec& scene, const CameraSpec& cam,
                           const std::string* only_object = nullptr) {
    const detail::CameraFrame f = detail::camera_frame(cam);
    const Vec3 light = normalized(cam.light_dir);
    const double aspect = static_cast<double>(cam.width) / cam.height;
    const int w = cam.width, h = cam.height;

    RenderOutput out;
    out.color = Image(w, h, 3, ColorSpace::SRGB);
    out.depth.assign(static_cast<std::size_t>(w) * h,
                     std::numeric_limits<double>::infinity());
    out.hit.assign(static_cast<std::size_t>(w) * h, kHitBackground);

    std::vector<std::int32_t> live;
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(scene.objects.size()); ++i)
        if (!only_object || scene.objects[static_cast<std::size_t>(i)].id == *only_object)
            live.push_back(i);

    for (int py = 0; py < h; ++py) {
        for (int px = 0; px < w; ++px) {
            // integer numerators keep the ray grid exactly mirror-symmetric
            const double ndc_x = static_cast<double>(2 * px + 1 - w) / w;
            const double ndc_y = static_cast<double>(h - (2 * py + 1)) / h;
            detail::Ray ray{f.origin,
                            normalized(f.forward +
                                       f.right * (ndc_x * aspect * f.tan_half_fov) +
                                       f.up * (ndc_y * f.tan_half_fov))};

            double best_t = std::numeric_limits<double>::infinity();
            Vec3 normal;
            Rgb albedo = scene.background_color;
            std::int32_t hit_id = kHitBackground;

            if (ray.dir.z != 0.0) {
                const double t = -ray.origin.z / ray.dir.z;
                if (t > detail::kRayEps) {
                    const double tx = ray.origin.x + ray.dir.x * t;
                    const double ty = ray.origin.y + ray.dir.y * t;
                    if (std::abs(tx) <= scene.table_half_x &&
                        std::abs(ty) <= scene.table_half_y) {
                        best_t = t;
                        normal = {0.0, 0.0, 1.0};
                        albedo = scene.table_color;
                        hit_id = kHitTable;
                    }
                }
            }
            for (const std::int32_t idx : live) {
                detail::Hit hit;
                if (detail::hit_object(ray, scene.objects[static_cast<std::size_t>(idx)], hit) &&
                    hit.t < best_t) {
                    best_t = hit.t;
                    normal = hit.normal;
                    albedo = scene.objects[static_cast<std::size_t>(idx)].color;
                    hit_id = idx;
                }
            }

            const std::size_t pix = static_cast<std::size_t>(py) * w + px;
            if (hit_id == kHitBackground) {
                out.color.planes[0][pix] = albedo.r;
                out.color.planes[1][pix] = albedo.g;
                out.color.planes[2][pix] = albedo.b;
            } else {
                const double lambert = std::max(0.0, dot(normal, light));
                const double shade = kAmbient + (1.0 - kAmbient) * lambert;
                out.color.planes[0][pix] = albedo.r * shade;
                out.color.planes[1][pix] = albedo.g * shade;
                out.color.planes[2][pix] = albedo.b * shade;
                out.depth[pix] = best_t;
                out.hit[pix] = hit_id;
            }
        }
    }
    return out;
}

// Fraction of the target's isolated projection hidden by the other objects:
// 1 - visible_pixels / isolated_pixels. Throws degenerate_scene if the target
// is invisible even in isolation.
inline double occlusion_ratio(const SceneSpec& scene, const CameraSpec& cam,
                              const std::string& target_id) {
    std::int32_t target_index = -1;
    for (std::size_t i = 0; i < scene.objects.size(); ++i)
        if (scene.objects[i].id == target_id) target_index = static_cast<std::int32_t>(i);
    if (target_index < 0)
        throw invalid_input("occlusion_ratio: target not in scene: " + target_id);

    const RenderOutput full = render(scene, cam);
    const RenderOutput isolated = render(scene, cam, &target_id);
    const std::size_t n_isolated = isolated.count_object_pixels(target_index);
    if (n_isolated == 0)
        throw degenerate_scene("occlusion_ratio: target invisible in isolation: " + target_id);
    const std::size_t n_full = full.count_object_pixels(target_index);
    return 1.0 - static_cast<double>(n_full) / static_cast<double>(n_isolated);
}

// Distance between the conservative bounding circles of two footprints;
// negative when the circles overlap.
inline double footprint_gap(const ObjectSpec& a, const ObjectSpec& b) {
    const double d = std::hypot(a.x - b.x, a.y - b.y);
    return d - a.footprint_radius() - b.footprint_radius();
}

// True iff the clearance cylinder around the target (radius grown by
// `clearance`, from the table to target top + clearance) strictly intersects
// no other object's bounding cylinder.
inline bool has_grasp_affordance(const SceneSpec& scene, const std::string& target_id,
                                 double clearance) {
    const ObjectSpec* target = scene.find(target_id);
    if (!target) throw invalid_input("has_grasp_affordance: target not in scene: " + target_id);
    const double r_t = target->footprint_radius() + clearance;
    for (const ObjectSpec& o : scene.objects) {
        if (o.id == target_id) continue;
        const double d = std::hypot(o.x - target->x, o.y - target->y);
        // both bounding cylinders start at the table, so overlap is purely radial
        if (d < r_t + o.footprint_radius()) return false;
    }
    return true;
}

inline bool footprint_inside_table(const SceneSpec& scene, const ObjectSpec& o) {
    const double r = o.footprint_radius();
    return o.x - r >= -scene.table_half_x && o.x + r <= scene.table_half_x &&
           o.y - r >= -scene.table_half_y && o.y + r <= scene.table_half_y;
}

}  // namespace clutterbench
