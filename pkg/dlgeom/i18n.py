"""
Internationalization support for dl.
"""

import locale
from typing import Dict


class I18n:
    """Internationalization manager."""

    def __init__(self):
        self.current_language = self._detect_language()
        self.translations = self._load_translations()

    def _detect_language(self) -> str:
        """Detect system language."""
        try:
            system_locale = locale.getlocale()[0]
            if system_locale and system_locale.startswith('zh'):
                return 'zh_CN'
        except (ValueError, TypeError):
            pass
        return 'en_US'

    def _load_translations(self) -> Dict[str, Dict[str, str]]:
        """Load translation dictionaries; en_US falls through to the key."""
        return {
            'en_US': {},
            'zh_CN': {
                # CLI help
                'Exact computation in Diestel-Leader graphs and lamplighter groups':
                    'Diestel-Leader 图与点灯人群的精确计算',
                'Available commands': '可用命令',
                'Pretty-print JSON output': '格式化输出 JSON',
                'Log progress to stderr': '在标准错误输出记录进度',
                'Number of trees': '树的数量',
                'Branching number (states per lamp)': '分支数（每盏灯的状态数）',
                'Build the ball around a vertex': '构建以某顶点为中心的球',
                'Center vertex (default: origin)': '中心顶点（默认：原点）',
                'Ball radius': '球半径',
                'Output format': '输出格式',
                'Distance between two vertices': '两个顶点之间的距离',
                'Source vertex': '起点',
                'Target vertex': '终点',
                'List every geodesic between two vertices': '列出两个顶点之间的所有测地线',
                'Rewrite an edge-type word': '改写边类型词',
                'Base vertex of the path': '路径的起始顶点',
                'Edge-type word, e.g. "0(1)-1 1(0)-0"': '边类型词，例如 "0(1)-1 1(0)-0"',
                'Rewrite operation': '改写操作',
                'Index of the first move of the pair': '移动对中第一个移动的下标',
                'Evaluate a generator word in the lamplighter group': '在点灯人群中计算生成元词',
                'Generator word, e.g. "t^3 (at) t^-2"': '生成元词，例如 "t^3 (at) t^-2"',
                'Multiply two generator words': '两个生成元词相乘',
                'Order of a group element': '群元素的阶',
                'Classify a boundary point of DL_2(q)': '对 DL_2(q) 的边界点分类',
                'Boundary point JSON': '边界点 JSON',
                'Act on a boundary point by a group element': '群元素作用于边界点',
                'Limit point g^inf of a group element': '群元素的极限点 g^inf',
                'North-south dynamics agreement radii': '南北动力学的一致半径',
                'Number of iterations': '迭代次数',
                'Build topological witnesses': '构造拓扑见证',
                'Witness kind': '见证类型',
                'Basis scale k': '基的尺度 k',
                'Neighborhood epsilon in (0, 1)': '邻域参数 epsilon，取值于 (0, 1)',
                'Ray descriptor JSON or file': '射线描述 JSON 或文件',
                'Run the acceptance property suites': '运行验收性质测试',
                'Suite name or "all"': '测试名称或 "all"',
                'Random seed': '随机种子',
                'Verification scale': '验证规模',
                'Include wall times in the report': '在报告中包含耗时',
                'Show or change settings': '查看或修改设置',
                'Configuration action': '配置操作',
                'Setting name': '设置名称',
                'Setting value': '设置值',

                # Messages
                'Operation cancelled by user.': '用户取消了操作。',
                'Error': '错误',
                'Configuration reset to defaults': '配置已重置为默认值',
                'Unknown setting: {}': '未知设置：{}',
                'Unknown suite: {}': '未知测试：{}',
                'Unknown scale: {}': '未知规模：{}',
                'Ball radius {} exceeds max_ball_radius {}': '球半径 {} 超过 max_ball_radius {}',
                'epsilon must lie in (0, 1)': 'epsilon 必须位于 (0, 1) 之间',
                '{} must be nonnegative': '{} 必须为非负数',
                '{} must be positive': '{} 必须为正数',
                'q must be at least 2, got {}': 'q 必须至少为 2，实际为 {}',
                'Failed to load config file, using defaults: {}': '加载配置文件失败，使用默认值：{}',
                'Failed to save config: {}': '保存配置失败：{}',
                'Ignoring non-integer {}: {}': '忽略非整数的 {}：{}',
                'missing required option {}': '缺少必需选项 {}',
            },
        }

    def translate(self, text: str) -> str:
        """Translate text to current language."""
        if self.current_language in self.translations:
            return self.translations[self.current_language].get(text, text)
        return text

    def set_language(self, language: str) -> None:
        """Set current language; 'auto' re-detects it."""
        if language == 'auto':
            self.current_language = self._detect_language()
        elif language in self.translations:
            self.current_language = language


_i18n = I18n()


def _(text: str) -> str:
    """Translation function."""
    return _i18n.translate(text)


def set_language(language: str) -> None:
    _i18n.set_language(language)
