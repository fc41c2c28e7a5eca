/**
 * Client-side cue lookup, re-implemented locally so highlight sync runs at
 * frame rate without a request per tick. The semantics are the engine's:
 * half-open [start_ms, end_ms) intervals, earliest-starting cue wins on
 * overlap. Parity with GET /cue_at is enforced by an integration test.
 */

import type { Cue, Segment } from './types';

export function cueAt(cues: Cue[], tMs: number): number | null {
    // Cues are sorted by start_ms. Binary-search a prefix running maximum of
    // end times: the first index where it exceeds t is the only candidate
    // that can be the earliest-starting match.
    if (cues.length === 0) return null;
    const prefixMaxEnd = new Array<number>(cues.length);
    let running = 0;
    for (let i = 0; i < cues.length; i++) {
        running = Math.max(running, cues[i].end_ms);
        prefixMaxEnd[i] = running;
    }
    let lo = 0;
    let hi = cues.length; // first index with prefixMaxEnd > t
    while (lo < hi) {
        const mid = (lo + hi) >> 1;
        if (prefixMaxEnd[mid] > tMs) hi = mid;
        else lo = mid + 1;
    }
    if (lo < cues.length && cues[lo].start_ms <= tMs) return lo;
    return null;
}

export function segmentAt(segments: Segment[], cueIndex: number | null): number | null {
    if (cueIndex === null) return null;
    for (const segment of segments) {
        if (segment.cue_indices.includes(cueIndex)) return segment.segment_index;
    }
    return null;
}

export interface HighlightUpdate {
    activeCueIndex: number | null;
    activeSegmentIndex: number | null;
    changed: boolean;
}

/** Tracks the active cue/segment for a playback position stream. */
export class HighlightTracker {
    private cues: Cue[] = [];
    private segments: Segment[] = [];
    private active: number | null = null;

    load(cues: Cue[], segments: Segment[]): void {
        this.cues = cues;
        this.segments = segments;
        this.active = null;
    }

    sync(positionMs: number): HighlightUpdate {
        const index = cueAt(this.cues, positionMs);
        const changed = index !== this.active;
        this.active = index;
        return {
            activeCueIndex: index,
            activeSegmentIndex: segmentAt(this.segments, index),
            changed,
        };
    }
}
