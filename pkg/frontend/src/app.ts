/**
 * Application wiring: search page, learning page, panel toggles, and the
 * playback-position loop that drives highlight sync. All engine responses go
 * through a stale-response guard: anything that arrives for a video the user
 * has already left is dropped.
 */

import { EngineClient } from './api';
import { HighlightTracker } from './cueSync';
import { renderGraph } from './graphWidget';
import { NotesPanel } from './notes';
import type { PlayerAdapter } from './player';
import { renderTopics } from './topics';
import { TranscriptPane } from './transcript';
import type { UiState, VideoView } from './types';

export interface AppElements {
    results: HTMLElement;
    transcript: HTMLElement;
    topics: HTMLElement;
    graph: HTMLElement;
    notes: HTMLElement;
    playerContainer: HTMLElement;
}

export class LearningApp {
    readonly state: UiState = {
        currentVideoId: null,
        positionMs: 0,
        activeCueIndex: null,
        activeSegmentIndex: null,
        panels: { topics: false, graph: false, notes: false },
        noteDraft: null,
    };

    private tracker = new HighlightTracker();
    private transcript: TranscriptPane;
    private notesPanel: NotesPanel;
    private view: VideoView | null = null;
    private player: PlayerAdapter | null = null;

    constructor(
        private client: EngineClient,
        private elements: AppElements,
        private makePlayer: (container: HTMLElement, videoId: string) => PlayerAdapter,
        private doc: Document = document,
    ) {
        this.transcript = new TranscriptPane(elements.transcript, doc);
        this.notesPanel = new NotesPanel(elements.notes, client, doc);
    }

    get currentView(): VideoView | null {
        return this.view;
    }

    async runSearch(keyword: string): Promise<void> {
        const results = await this.client.search(keyword);
        this.elements.results.innerHTML = '';
        for (const summary of results) {
            const card = this.doc.createElement('div');
            card.className = 'result-card';
            card.dataset.videoId = summary.video_id;
            const title = this.doc.createElement('span');
            title.className = 'result-title';
            title.textContent = summary.title;
            const duration = this.doc.createElement('span');
            duration.className = 'result-duration';
            duration.textContent = formatDuration(summary.duration_ms);
            card.append(title, duration);
            card.addEventListener('click', () => void this.openVideo(summary.video_id));
            this.elements.results.appendChild(card);
        }
    }

    async openVideo(videoId: string): Promise<void> {
        this.state.currentVideoId = videoId;
        this.state.positionMs = 0;
        this.state.activeCueIndex = null;
        this.state.activeSegmentIndex = null;
        const view = await this.client.video(videoId);
        if (this.state.currentVideoId !== videoId) return; // superseded: drop
        this.view = view;
        this.tracker.load(view.cues, view.segments);
        this.elements.playerContainer.innerHTML = '';
        this.player = this.makePlayer(this.elements.playerContainer, videoId);
        this.player.onTime((tMs) => this.syncHighlight(tMs));
        this.transcript.render(view.cues, view.segments, this.player);
        renderTopics(this.elements.topics, view.smart_titles, view.low_relevance, this.doc);
        await this.notesPanel.renderList(videoId);
    }

    /** Drive highlight state from the playback position (client clock). */
    syncHighlight(positionMs: number): void {
        this.state.positionMs = positionMs;
        const update = this.tracker.sync(positionMs);
        this.state.activeCueIndex = update.activeCueIndex;
        this.state.activeSegmentIndex = update.activeSegmentIndex;
        if (update.changed) {
            this.transcript.highlight(update.activeCueIndex);
            if (this.state.panels.graph && update.activeSegmentIndex !== null) {
                void this.showGraph(update.activeSegmentIndex);
            }
        }
    }

    clickToSeek(cueIndex: number): void {
        const cue = this.view?.cues[cueIndex];
        if (cue && this.player) this.player.seekToMs(cue.start_ms);
    }

    toggleTopics(): void {
        this.state.panels.topics = !this.state.panels.topics;
        this.elements.topics.classList.toggle('open', this.state.panels.topics);
    }

    async showGraph(segmentIndex: number): Promise<void> {
        const videoId = this.state.currentVideoId;
        if (!videoId) return;
        this.state.panels.graph = true;
        const payload = await this.client.segmentGraph(videoId, segmentIndex);
        if (this.state.currentVideoId !== videoId) return; // superseded: drop
        renderGraph(this.elements.graph, payload, this.doc);
    }

    pauseAndNote(): void {
        if (!this.player || this.state.currentVideoId === null) return;
        this.state.panels.notes = true;
        this.notesPanel.openDraft(this.player, this.state.positionMs);
        this.state.noteDraft = this.notesPanel.draftState;
    }

    async saveNote(text: string): Promise<void> {
        const videoId = this.state.currentVideoId;
        if (!videoId) return;
        await this.notesPanel.saveDraft(videoId, text);
        this.state.noteDraft = null;
    }
}

export function formatDuration(ms: number): string {
    const totalSeconds = Math.floor(ms / 1000);
    const minutes = Math.floor(totalSeconds / 60);
    const seconds = totalSeconds % 60;
    return `${minutes}:${String(seconds).padStart(2, '0')}`;
}
