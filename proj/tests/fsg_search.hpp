#pragma once

// Exhaustive move generators for small formula-size-game instances.

#include <functional>
#include <string>
#include <vector>

#include "msc/errors.hpp"
#include "msc/fsg.hpp"

namespace fsgsearch {

using namespace msc;

struct SearchStats {
    long positions = 0;
    long violations = 0;  // invariant broken or the wrong player won
    long samson_wins = 0;
    long delilah_wins = 0;
};

// Every Samson move against DelilahAdvisor from `pos`. The invariant must hold at every
// open position and Samson must never win.
inline void advisor_search(const FsgPosition& pos, const FsgMoveSpace& sp, SearchStats& st, long max_positions)
{
    if (++st.positions > max_positions)
        throw ResourceError("advisor search exceeded its position budget");
    if (pos.finished()) {
        if (*pos.winner == FsgPlayer::Samson) {
            ++st.samson_wins;
            ++st.violations;
        } else {
            ++st.delilah_wins;
        }
        return;
    }
    if (!bisim_invariant_holds(pos, BisimKind::GlobalCounting)) {
        ++st.violations;
        return;
    }
    DelilahAdvisor adv;
    auto node = adv.choose_node(pos);
    if (!node) {
        ++st.violations;
        return;
    }
    for (const auto& mv : fsg_samson_moves(pos, *node, sp)) {
        FsgMove d = mv;
        adv.complete(pos, *node, d);
        for (const auto& full : fsg_samson_replies(d))
            advisor_search(fsg_apply(pos, *node, full), sp, st, max_positions);
    }
}

// Every Delilah choice (node, functions, picks, challenges) against UniformSamson. The
// strategy must win every play and every position must embed into the program.
inline void uniform_search(const UniformSamson& samson, const FsgPosition& pos, SearchStats& st, long max_positions)
{
    if (++st.positions > max_positions)
        throw ResourceError("uniform search exceeded its position budget");
    if (!check_position_embedding(pos, samson.program()))
        ++st.violations;
    if (pos.finished()) {
        if (*pos.winner == FsgPlayer::Samson) {
            ++st.samson_wins;
        } else {
            ++st.delilah_wins;
            ++st.violations;
        }
        return;
    }
    for (int v : pos.U) {
        UniformSamson s = samson;
        FsgMove mv = s.move(pos, v);
        for (FsgMove d : fsg_delilah_completions(pos, v, mv)) {
            s.reply(pos, v, d);
            UniformSamson next = s;
            FsgPosition after = fsg_apply(pos, v, d);
            next.observe(after);
            uniform_search(next, after, st, max_positions);
        }
    }
}

// True iff Samson has a winning strategy from `pos`: for every node Delilah opens he has
// a move that beats all her completions. Moves come from `sp`.
inline bool samson_can_win(const FsgPosition& pos, const FsgMoveSpace& sp, SearchStats& st, long max_positions)
{
    if (++st.positions > max_positions)
        throw ResourceError("strategy search exceeded its position budget");
    if (pos.finished())
        return *pos.winner == FsgPlayer::Samson;
    for (int v : pos.U) {
        bool some_move = false;
        for (const auto& mv : fsg_samson_moves(pos, v, sp)) {
            bool beats_all = true;
            for (const auto& d : fsg_delilah_completions(pos, v, mv)) {
                bool answered = false;
                for (const auto& full : fsg_samson_replies(d))
                    if (samson_can_win(fsg_apply(pos, v, full), sp, st, max_positions)) {
                        answered = true;
                        break;
                    }
                if (!answered) {
                    beats_all = false;
                    break;
                }
            }
            if (beats_all) {
                some_move = true;
                break;
            }
        }
        if (!some_move)
            return false;
    }
    return true;
}

}  // namespace fsgsearch
