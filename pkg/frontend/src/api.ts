/**
 * Typed client for the annotation engine.
 *
 * Every outbound request the page makes funnels through this module and is
 * appended to the request log, so tests (and curious operators) can verify
 * that nothing but the engine origin and the single player embed is ever
 * contacted.
 */

import type { GraphPayload, Note, VideoSummary, VideoView } from './types';

export interface LoggedRequest {
    url: string;
    kind: 'engine' | 'player-embed';
}

const requestLog: LoggedRequest[] = [];

export function logRequest(url: string, kind: LoggedRequest['kind']): void {
    requestLog.push({ url, kind });
}

export function getRequestLog(): readonly LoggedRequest[] {
    return requestLog;
}

export function clearRequestLog(): void {
    requestLog.length = 0;
}

export class EngineError extends Error {
    constructor(
        public status: number,
        public code: string,
        public category?: string,
    ) {
        super(`engine returned ${status} (${code})`);
    }
}

export class EngineClient {
    constructor(
        private baseUrl: string,
        private fetchImpl?: typeof fetch,
    ) {
        this.baseUrl = baseUrl.replace(/\/$/, '');
    }

    get origin(): string {
        return new URL(this.baseUrl).origin;
    }

    private async request<T>(path: string, init?: RequestInit): Promise<T> {
        const url = this.baseUrl + path;
        logRequest(url, 'engine');
        const doFetch = this.fetchImpl ?? globalThis.fetch.bind(globalThis);
        const response = await doFetch(url, init);
        if (!response.ok) {
            let code = 'error';
            let category: string | undefined;
            try {
                const body = await response.json();
                code = body.error ?? code;
                category = body.category;
            } catch {
                // non-JSON error body; keep the generic code
            }
            throw new EngineError(response.status, code, category);
        }
        return (await response.json()) as T;
    }

    search(keyword: string, max = 10): Promise<VideoSummary[]> {
        const q = encodeURIComponent(keyword);
        return this.request<VideoSummary[]>(`/search?q=${q}&n=${max}`);
    }

    video(videoId: string): Promise<VideoView> {
        return this.request<VideoView>(`/video/${encodeURIComponent(videoId)}`);
    }

    segmentGraph(videoId: string, segmentIndex: number): Promise<GraphPayload> {
        return this.request<GraphPayload>(
            `/video/${encodeURIComponent(videoId)}/segment/${segmentIndex}/graph`,
        );
    }

    cueAt(videoId: string, tMs: number): Promise<{ cue_index: number | null }> {
        return this.request<{ cue_index: number | null }>(
            `/video/${encodeURIComponent(videoId)}/cue_at?t=${tMs}`,
        );
    }

    notes(videoId: string): Promise<Note[]> {
        return this.request<Note[]>(`/video/${encodeURIComponent(videoId)}/notes`);
    }

    addNote(videoId: string, note: Note): Promise<Note> {
        return this.request<Note>(`/video/${encodeURIComponent(videoId)}/notes`, {
            method: 'POST',
            headers: { 'Content-Type': 'application/json' },
            body: JSON.stringify(note),
        });
    }
}
