/**
 * Smart-titles panel: topic terms with percentage bars, available before the
 * video plays, plus a badge when the uploaded title looks unrelated to the
 * subtitle content.
 */

import type { SmartTitle } from './types';

export function renderTopics(
    root: HTMLElement,
    topics: SmartTitle[],
    lowRelevance: boolean,
    doc: Document = document,
): void {
    root.innerHTML = '';
    if (lowRelevance) {
        const badge = doc.createElement('div');
        badge.className = 'relevance-badge';
        badge.textContent = 'Title may not match video content';
        root.appendChild(badge);
    }
    const list = doc.createElement('ul');
    list.className = 'topic-list';
    for (const topic of topics) {
        const item = doc.createElement('li');
        item.className = 'topic';
        const label = doc.createElement('span');
        label.className = 'topic-term';
        label.textContent = topic.term;
        const bar = doc.createElement('span');
        bar.className = 'topic-bar';
        bar.style.width = `${topic.weight_percent.toFixed(2)}%`;
        const pct = doc.createElement('span');
        pct.className = 'topic-pct';
        pct.textContent = `${topic.weight_percent.toFixed(1)}%`;
        item.append(label, bar, pct);
        list.appendChild(item);
    }
    root.appendChild(list);
}
