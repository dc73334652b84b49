#include "nmrqc/seq_compiler.hpp"

#include "nmrqc/propagators.hpp"

#include <cmath>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace nmrqc {

namespace {

struct EventPropagator {
    const SpinSystem& sys;
    double& duration_s;

    ComplexMatrix operator()(const PulseEvent& e) const {
        return rotation_propagator(sys, e.target, e.axis, deg_to_rad(e.angle_deg));
    }
    ComplexMatrix operator()(const DelayEvent& e) const {
        duration_s += e.duration_s;
        return delay_propagator(sys, e.duration_s, e.refocus);
    }
    ComplexMatrix operator()(const ZCompositeEvent& e) const {
        return rotation_propagator(sys, e.target, Axis::Z, deg_to_rad(e.angle_deg));
    }
    ComplexMatrix operator()(const CoupleEvent& e) const {
        return coupling_propagator(sys, e.a, e.b, deg_to_rad(e.theta_deg));
    }
};

bool zero_mod_720(double angle_deg) {
    return std::remainder(angle_deg, 720.0) == 0.0;
}

bool inverse_pair(const Event& a, const Event& b) {
    if (const auto* pa = std::get_if<PulseEvent>(&a)) {
        const auto* pb = std::get_if<PulseEvent>(&b);
        return pb != nullptr && pa->target == pb->target && pa->axis == pb->axis &&
               zero_mod_720(pa->angle_deg + pb->angle_deg);
    }
    if (const auto* za = std::get_if<ZCompositeEvent>(&a)) {
        const auto* zb = std::get_if<ZCompositeEvent>(&b);
        return zb != nullptr && za->target == zb->target &&
               zero_mod_720(za->angle_deg + zb->angle_deg);
    }
    return false;
}

std::optional<Event> merged_pair(const Event& a, const Event& b) {
    if (const auto* pa = std::get_if<PulseEvent>(&a)) {
        const auto* pb = std::get_if<PulseEvent>(&b);
        if (pb != nullptr && pa->target == pb->target && pa->axis == pb->axis) {
            return PulseEvent{pa->target, pa->axis, pa->angle_deg + pb->angle_deg};
        }
    }
    if (const auto* za = std::get_if<ZCompositeEvent>(&a)) {
        const auto* zb = std::get_if<ZCompositeEvent>(&b);
        if (zb != nullptr && za->target == zb->target) {
            return ZCompositeEvent{za->target, za->angle_deg + zb->angle_deg};
        }
    }
    return std::nullopt;
}

bool droppable(const Event& e) {
    if (const auto* p = std::get_if<PulseEvent>(&e)) {
        return zero_mod_720(p->angle_deg);
    }
    if (const auto* z = std::get_if<ZCompositeEvent>(&e)) {
        return zero_mod_720(z->angle_deg);
    }
    if (const auto* d = std::get_if<DelayEvent>(&e)) {
        return d->duration_s == 0.0;
    }
    return false;
}

using Item = std::pair<Event, SourcePos>;

bool pass_cancel(std::vector<Item>& items) {
    std::vector<Item> out;
    out.reserve(items.size());
    bool changed = false;
    for (std::size_t i = 0; i < items.size();) {
        if (i + 1 < items.size() && inverse_pair(items[i].first, items[i + 1].first)) {
            changed = true;
            i += 2;
        } else {
            out.push_back(std::move(items[i]));
            ++i;
        }
    }
    items = std::move(out);
    return changed;
}

bool pass_merge(std::vector<Item>& items) {
    std::vector<Item> out;
    out.reserve(items.size());
    bool changed = false;
    for (Item& item : items) {
        if (!out.empty()) {
            if (auto m = merged_pair(out.back().first, item.first)) {
                out.back().first = std::move(*m);
                changed = true;
                continue;
            }
        }
        out.push_back(std::move(item));
    }
    items = std::move(out);
    return changed;
}

bool pass_drop(std::vector<Item>& items) {
    std::vector<Item> out;
    out.reserve(items.size());
    bool changed = false;
    for (Item& item : items) {
        if (droppable(item.first)) {
            changed = true;
        } else {
            out.push_back(std::move(item));
        }
    }
    items = std::move(out);
    return changed;
}

void validate_targets(const SequenceAST& ast, const SpinSystem& sys) {
    for (const Event& e : ast.events) {
        if (const auto* p = std::get_if<PulseEvent>(&e)) {
            (void)sys.index_of(p->target);
        } else if (const auto* z = std::get_if<ZCompositeEvent>(&e)) {
            (void)sys.index_of(z->target);
        } else if (const auto* c = std::get_if<CoupleEvent>(&e)) {
            (void)sys.index_of(c->a);
            (void)sys.index_of(c->b);
        }
    }
}

} // namespace

CompiledUnitary compile(const SequenceAST& ast, const SpinSystem& sys) {
    double duration_s = 0.0;
    ComplexMatrix u = ComplexMatrix::identity(sys.dim());
    const EventPropagator prop{sys, duration_s};
    for (const Event& e : ast.events) {
        u = std::visit(prop, e) * u;
    }
    return CompiledUnitary{std::move(u), ast.events.size(), duration_s};
}

SequenceAST expand_composite_z(const SequenceAST& ast) {
    const bool tracked = ast.positions.size() == ast.events.size();
    SequenceAST out;
    out.name = ast.name;
    for (std::size_t i = 0; i < ast.events.size(); ++i) {
        const SourcePos pos = tracked ? ast.positions[i] : SourcePos{};
        if (const auto* z = std::get_if<ZCompositeEvent>(&ast.events[i])) {
            out.events.push_back(PulseEvent{z->target, Axis::Y, -90.0});
            out.events.push_back(PulseEvent{z->target, Axis::X, z->angle_deg});
            out.events.push_back(PulseEvent{z->target, Axis::Y, 90.0});
            out.positions.insert(out.positions.end(), 3, pos);
        } else {
            out.events.push_back(ast.events[i]);
            out.positions.push_back(pos);
        }
    }
    return out;
}

SequenceAST optimize(const SequenceAST& ast, const SpinSystem& sys) {
    validate_targets(ast, sys);
    const bool tracked = ast.positions.size() == ast.events.size();
    std::vector<Item> items;
    items.reserve(ast.events.size());
    for (std::size_t i = 0; i < ast.events.size(); ++i) {
        items.emplace_back(ast.events[i], tracked ? ast.positions[i] : SourcePos{});
    }
    // Every firing pass strictly shrinks the list, so the fixpoint arrives
    // well inside the events^2 bound.
    const std::size_t max_rounds = ast.events.size() * ast.events.size() + 1;
    for (std::size_t round = 0; round < max_rounds; ++round) {
        bool changed = pass_cancel(items);
        changed = pass_merge(items) || changed;
        changed = pass_drop(items) || changed;
        if (!changed) {
            break;
        }
    }
    SequenceAST out;
    out.name = ast.name;
    out.events.reserve(items.size());
    out.positions.reserve(items.size());
    for (Item& item : items) {
        out.events.push_back(std::move(item.first));
        out.positions.push_back(item.second);
    }
    return out;
}

} // namespace nmrqc
