/**
 * Time-synced transcript pane: one element per cue, highlight follows the
 * playback position, click seeks the player to the cue start.
 */

import type { Cue, Segment } from './types';
import type { PlayerAdapter } from './player';

export class TranscriptPane {
    private cueElements: HTMLElement[] = [];
    private highlighted: number | null = null;

    constructor(
        private root: HTMLElement,
        private doc: Document = document,
    ) {}

    render(cues: Cue[], segments: Segment[], player: PlayerAdapter): void {
        this.root.innerHTML = '';
        this.cueElements = [];
        this.highlighted = null;
        for (const segment of segments) {
            const heading = this.doc.createElement('h3');
            heading.className = 'segment-title';
            heading.textContent = segment.title || `Part ${segment.segment_index + 1}`;
            this.root.appendChild(heading);
            for (const cueIndex of segment.cue_indices) {
                const cue = cues[cueIndex];
                const el = this.doc.createElement('p');
                el.className = 'cue';
                el.dataset.cueIndex = String(cue.index);
                el.textContent = cue.text;
                el.addEventListener('click', () => player.seekToMs(cue.start_ms));
                this.root.appendChild(el);
                this.cueElements[cue.index] = el;
            }
        }
    }

    /** Applies the highlight class to exactly one cue element, or none. */
    highlight(cueIndex: number | null): void {
        if (cueIndex === this.highlighted) return;
        if (this.highlighted !== null) {
            this.cueElements[this.highlighted]?.classList.remove('active');
        }
        if (cueIndex !== null) {
            const el = this.cueElements[cueIndex];
            el?.classList.add('active');
            el?.scrollIntoView?.({ block: 'nearest', behavior: 'smooth' });
        }
        this.highlighted = cueIndex;
    }

    highlightedIndex(): number | null {
        return this.highlighted;
    }
}
