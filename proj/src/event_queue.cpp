#include "lvsim/event_queue.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <utility>

namespace lvsim {

void EventQueue::schedule(SimTime at, Handler fn) {
    if (at < now_) {
        std::fprintf(stderr, "EventQueue: schedule at %lld before now %lld\n",
                     static_cast<long long>(at), static_cast<long long>(now_));
        std::abort();
    }
    heap_.push_back(Entry{at, next_seq_++, std::move(fn)});
    std::push_heap(heap_.begin(), heap_.end(), std::greater<>{});
}

bool EventQueue::run_next() {
    if (heap_.empty()) return false;
    std::pop_heap(heap_.begin(), heap_.end(), std::greater<>{});
    Entry e = std::move(heap_.back());
    heap_.pop_back();
    now_ = e.at;
    ++dispatched_;
    e.fn();
    return true;
}

void EventQueue::run_until(SimTime t_end) {
    while (!heap_.empty() && heap_.front().at <= t_end) run_next();
    if (now_ < t_end) now_ = t_end;
}

}  // namespace lvsim
