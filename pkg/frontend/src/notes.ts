/**
 * Sticky-notes panel: pause the player, draft a note anchored at the current
 * position, save it through the engine, and list existing notes.
 */

import type { EngineClient } from './api';
import type { Note } from './types';
import type { PlayerAdapter } from './player';

export class NotesPanel {
    private draft: { t_ms: number; text: string } | null = null;

    constructor(
        private root: HTMLElement,
        private client: EngineClient,
        private doc: Document = document,
    ) {}

    get draftState(): { t_ms: number; text: string } | null {
        return this.draft;
    }

    /** Pause playback and open one note editor at the current position. */
    openDraft(player: PlayerAdapter, positionMs: number): void {
        player.pause();
        this.draft = { t_ms: positionMs, text: '' };
        this.renderDraft();
    }

    async saveDraft(videoId: string, text: string): Promise<Note | null> {
        if (!this.draft) return null;
        const note = await this.client.addNote(videoId, { t_ms: this.draft.t_ms, text });
        this.draft = null;
        await this.renderList(videoId);
        return note;
    }

    discardDraft(): void {
        this.draft = null;
        const editor = this.root.querySelector('.note-editor');
        editor?.remove();
    }

    async renderList(videoId: string): Promise<void> {
        const notes = await this.client.notes(videoId);
        this.root.innerHTML = '';
        const list = this.doc.createElement('ul');
        list.className = 'note-list';
        for (const note of notes) {
            const item = this.doc.createElement('li');
            item.className = 'note';
            item.dataset.tMs = String(note.t_ms);
            item.textContent = `[${formatMs(note.t_ms)}] ${note.text}`;
            list.appendChild(item);
        }
        this.root.appendChild(list);
        if (this.draft) this.renderDraft();
    }

    private renderDraft(): void {
        if (!this.draft) return;
        this.root.querySelector('.note-editor')?.remove();
        const editor = this.doc.createElement('div');
        editor.className = 'note-editor';
        editor.dataset.tMs = String(this.draft.t_ms);
        const area = this.doc.createElement('textarea');
        area.className = 'note-text';
        editor.appendChild(area);
        this.root.appendChild(editor);
    }
}

export function formatMs(tMs: number): string {
    const totalSeconds = Math.floor(tMs / 1000);
    const minutes = Math.floor(totalSeconds / 60);
    const seconds = totalSeconds % 60;
    return `${minutes}:${String(seconds).padStart(2, '0')}`;
}
