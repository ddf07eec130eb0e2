"""burnlab の例外クラス"""


class BurnlabError(Exception):
    """すべてのエラーの基底クラス"""


class ConfigError(BurnlabError):
    """環境変数の値が不正"""


class GraphFormatError(BurnlabError):
    """グラフテキストの形式エラー"""


class InvalidInputError(BurnlabError):
    """グラフのクラス（カクタス・ポリツリー等）や連結性の前提を満たさない"""


class NoEligibleVertexError(BurnlabError):
    """条件を満たす頂点が無い"""


class ScheduleError(BurnlabError):
    """燃焼系列が不正（既に燃えている頂点を選んだ等）"""


class InfeasibleScheduleError(BurnlabError):
    """中心に必要な燃焼半径を割り当てられない"""


class OracleCapError(BurnlabError):
    """厳密解の計算対象として頂点数が大きすぎる"""


class BudgetExceededError(BurnlabError):
    """厳密探索の展開ノード数が上限を超えた"""


class GenSpecError(BurnlabError):
    """生成パラメータが不正"""
